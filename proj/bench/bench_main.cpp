// Parallel kernels against their serial references.
#include <benchmark/benchmark.h>
#include <omp.h>

#include <cmath>

#include "twistknot/casework/sweep.hpp"
#include "twistknot/oracle/pd.hpp"

using namespace tk;

namespace {

PDCode diagram(int extra) {
  // 7_6 with two bands lengthened by `extra` crossings each.
  const auto tpl = builtin_template("7_6");
  return expand_twists(tpl, parse_signs("+++++"), {1, 1 + extra, 1, 1, 1 + extra});
}

void BM_bracket_serial(benchmark::State& state) {
  const PDCode pd = diagram(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kauffman_bracket_serial(pd));
  state.counters["crossings"] = static_cast<double>(pd.size());
}

void BM_bracket_parallel(benchmark::State& state) {
  const PDCode pd = diagram(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kauffman_bracket(pd));
  state.counters["crossings"] = static_cast<double>(pd.size());
  state.counters["threads"] = omp_get_max_threads();
}

void run_sweep(benchmark::State& state, bool parallel) {
  SweepConfig cfg;
  cfg.family = "7_6";
  cfg.range = static_cast<int>(state.range(0));
  cfg.parallel = parallel;
  cfg.verify_formulas = false;
  for (auto _ : state) benchmark::DoNotOptimize(sweep_case(cfg, "++-+-"));
  state.counters["instances"] = std::pow(cfg.range, 5);
}

void BM_sweep_serial(benchmark::State& state) { run_sweep(state, false); }
void BM_sweep_parallel(benchmark::State& state) { run_sweep(state, true); }

}  // namespace

BENCHMARK(BM_bracket_serial)->Arg(0)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_bracket_parallel)->Arg(0)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_serial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_parallel)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
