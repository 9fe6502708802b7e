#include "twistknot/casework/sweep.hpp"

#include <omp.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "twistknot/oracle/pd.hpp"

namespace tk {

void PropertyTally::record(const std::string& name, bool ok) {
  auto& c = counts[name];
  ++c[0];
  if (!ok) ++c[1];
}

void PropertyTally::merge(const PropertyTally& other) {
  for (const auto& [name, c] : other.counts) {
    auto& mine = counts[name];
    mine[0] += c[0];
    mine[1] += c[1];
  }
}

bool PropertyTally::all_hold() const { return failures() == 0; }

long PropertyTally::failures() const {
  long n = 0;
  for (const auto& [name, c] : counts) n += c[1];
  return n;
}

long CaseReport::excluded() const {
  long n = 0;
  for (const auto& [gate, count] : histogram) n += count;
  return n;
}

CaseContext::CaseContext(const std::string& family, const std::string& sign_case)
    : spec_(builtin_family(family), parse_signs(sign_case)),
      mirror_(spec_.mirrored()),
      seifert_(make_template(spec_.definition(), spec_.signs())),
      leading_(leading_coeff_symbolic(seifert_)) {}

namespace {

std::string instance_label(const CaseContext& ctx, const TwistVector& n) {
  std::string s = ctx.spec().name() + " " + ctx.spec().case_string() + " (";
  for (std::size_t i = 0; i < n.size(); ++i) s += (i ? "," : "") + std::to_string(n[i]);
  return s + ")";
}

bool same_conway(const ConwaySeries& a, const ConwaySeries& b) {
  const std::size_t m = std::max(a.coeffs.size(), b.coeffs.size());
  for (std::size_t i = 0; i < m; ++i)
    if (a.a(static_cast<int>(2 * i)) != b.a(static_cast<int>(2 * i))) return false;
  return true;
}

}  // namespace

InstanceResult evaluate_instance(const CaseContext& ctx, const TwistVector& n, bool use_root5, bool check_properties,
                                 PropertyTally& tally) {
  InstanceResult r;
  r.twists = n;
  // Local tally so a failing instance can list its own failures.
  PropertyTally local;
  auto check = [&](const char* name, bool ok) {
    local.record(name, ok);
    if (!ok) r.failed_properties.emplace_back(name);
  };
  try {
    const FamilySpec& f = ctx.spec();
    const HalfLaurent v = f.assemble_jones(n);
    const std::vector<Rational> derivs = v.derivs_at_one(4);
    const int dim = ctx.seifert().dim;
    const std::vector<Integer> s = ctx.seifert().instantiate(n);
    const HalfLaurent delta = alexander_poly(s, dim);
    const ConwaySeries conway = conway_poly(s, dim);
    const Integer leading = delta.coefficient(2 * dim);
    r.verdict = cosmetic_gate(v, derivs, conway, leading, use_root5);
    r.verdict.instance = instance_label(ctx, n);
    r.jones_is_one = v.is_one();
    r.conway_is_one = conway.is_trivial();

    if (check_properties) {
      check("V(1)=1", derivs[0] == 1);
      check("V'(1)=0", derivs[1] == 0);
      check("Delta(1)=+-1", abs(delta.at_one()) == 1);
      check("Conway(0)=1", conway.a(0) == 1);
      check("V''(1)=-6a2", derivs[2] == Rational(-6 * conway.a(2)));
      check("derivative routes agree", f.leibniz_derivs(n, 4) == derivs);
      check("Conway matches Alexander", same_conway(to_conway(delta.shifted(-dim)), conway));
      std::vector<Rational> point(n.begin(), n.end());
      check("symbolic leading coefficient", ctx.leading().eval(point) == Rational(leading));
      check("mirror symmetry", ctx.mirror().assemble_jones(n) == v.mirrored());
      for (int band = 0; band < f.size(); ++band) {
        TwistVector up = n;
        ++up[static_cast<std::size_t>(band)];
        const int sg = f.bands()[static_cast<std::size_t>(band)].sign;
        const HalfLaurent lhs = f.assemble_jones(up) - v.shifted(4 * sg);
        const HalfLaurent rhs = Integer(sg) * (f.resolved_partial(up, band) * HalfLaurent::skein_z()).shifted(2 * sg);
        check("skein per band", lhs == rhs);
      }
      if (conway.is_trivial()) {
        bool routes = true;
        FourthDerivativeCheck d4;
        try {
          d4 = fourth_derivative_gate(v, conway);
        } catch (const std::logic_error&) {
          routes = false;
        }
        check("j4 series equals j4 from derivatives", routes);
        if (routes) {
          const auto ft = finite_type(Rational(conway.a(2)), Rational(conway.a(4)), Rational(conway.a(6)), d4.j4);
          check("ito_residual(2,1)=j4", ito_residual(2, 1, ft) == d4.j4);
          const Rational reduced = 96 * ft.w4 + 210 * ft.v6 - 10 * ft.v4;
          check("96w4+210v6-10v4 vanishes iff j4 does", (reduced == 0) == (d4.j4 == 0));
        }
      }
    }
    if (r.verdict.is_exception()) {
      r.root5_inconclusive = root5_gate(v) == Root5Verdict::Inconclusive;
      if (check_properties) {
        check("exception Jones is 1", r.jones_is_one);
        check("exception Conway is 1", r.conway_is_one);
        check("exception root5 inconclusive", r.root5_inconclusive);
      }
    }
  } catch (const std::exception& e) {
    r.error = e.what();
    check("evaluation", false);
  }
  tally.merge(local);
  return r;
}

std::vector<TwistVector> twist_box(int bands, int range) {
  std::vector<TwistVector> out;
  TwistVector n(static_cast<std::size_t>(bands), 1);
  if (range < 1) return out;
  while (true) {
    out.push_back(n);
    int i = bands - 1;
    while (i >= 0 && n[static_cast<std::size_t>(i)] == range) n[static_cast<std::size_t>(i--)] = 1;
    if (i < 0) break;
    ++n[static_cast<std::size_t>(i)];
  }
  return out;
}

CaseReport sweep_case(const SweepConfig& cfg, const std::string& sign_case) {
  const CaseContext ctx(cfg.family, sign_case);
  CaseReport report;
  report.family = cfg.family;
  report.sign_case = ctx.spec().case_string();
  const auto box = twist_box(ctx.spec().size(), cfg.range);
  const long count = static_cast<long>(box.size());
  std::vector<InstanceResult> results(box.size());
  std::vector<PropertyTally> tallies;

  if (cfg.parallel) {
    const int threads = cfg.workers > 0 ? cfg.workers : omp_get_max_threads();
    tallies.resize(static_cast<std::size_t>(threads));
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
    for (long i = 0; i < count; ++i)
      results[static_cast<std::size_t>(i)] = evaluate_instance(ctx, box[static_cast<std::size_t>(i)], cfg.use_root5, cfg.check_properties,
                                                               tallies[static_cast<std::size_t>(omp_get_thread_num())]);
  } else {
    tallies.resize(1);
    for (long i = 0; i < count; ++i)
      results[static_cast<std::size_t>(i)] = evaluate_instance(ctx, box[static_cast<std::size_t>(i)], cfg.use_root5, cfg.check_properties, tallies[0]);
  }
  for (const auto& t : tallies) report.properties.merge(t);

  report.instances = count;
  for (auto& r : results) {
    if (!r.error.empty() || !r.failed_properties.empty()) report.failures.push_back(r);
    if (!r.error.empty()) {
      ++report.histogram["error"];
      continue;
    }
    const ObstructionVerdict& v = r.verdict;
    if (v.is_exception()) {
      report.exceptions.push_back(std::move(r));
      continue;
    }
    ++report.histogram[gate_name(v.excluded_by)];
    if (v.excluded_by == Gate::D4) report.d4_instances.push_back(r.twists);
  }

  if (cfg.crossing_budget > 0) {
    const DiagramTemplate tpl = builtin_template(cfg.family);
    int done = 0;
    for (const auto& n : box) {
      if (done >= cfg.oracle_samples) break;
      if (expanded_size(tpl, n) > cfg.crossing_budget) continue;
      bool ok = false;
      try {
        ok = crosscheck(ctx.spec(), tpl, n, cfg.crossing_budget);
      } catch (const std::exception&) {
      }
      report.properties.record("oracle agreement", ok);
      ++done;
    }
  }

  if (cfg.verify_formulas) {
    const auto reg = builtin_registry(cfg.family);
    if (!reg->blocks_for(report.sign_case).empty()) report.formulas = verify_paper_case(*reg, report.sign_case);
  }
  return report;
}

std::vector<CaseReport> sweep(const SweepConfig& cfg) {
  std::vector<std::string> cases = cfg.cases;
  if (cases.empty())
    for (const auto& s : all_sign_cases(builtin_family(cfg.family)->bands())) cases.push_back(signs_to_string(s));
  std::vector<CaseReport> out;
  for (const auto& c : cases) out.push_back(sweep_case(cfg, c));
  return out;
}

ExceptionClassification classify_exceptions(const std::vector<CaseReport>& reports, const ExceptionTable& table) {
  ExceptionClassification out;
  for (const auto& row : table.rows) {
    ExceptionRecord rec;
    rec.family = table.family;
    rec.sign_case = row.sign_case;
    rec.row = row.row;
    rec.pattern = row.printed;
    rec.twist_text = row.twist_text;
    out.records.push_back(rec);
  }
  for (const auto& rep : reports) {
    if (!rep.exceptions.empty()) out.cases_with_exceptions.push_back(rep.sign_case);
    for (const auto& inst : rep.exceptions) {
      bool matched = false;
      for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        if (row.sign_case != rep.sign_case || !row.match(inst.twists)) continue;
        matched = true;
        auto& rec = out.records[i];
        rec.instances.push_back(inst.twists);
        rec.jones_is_one = rec.jones_is_one && inst.jones_is_one;
        rec.conway_is_one = rec.conway_is_one && inst.conway_is_one;
        rec.root5_inconclusive = rec.root5_inconclusive && inst.root5_inconclusive;
      }
      if (!matched) out.unmatched.emplace_back(rep.sign_case, inst.twists);
    }
  }
  return out;
}

std::vector<std::string> mirror_mismatches(const std::vector<CaseReport>& reports) {
  std::map<std::string, const CaseReport*> by_case;
  for (const auto& r : reports) by_case[r.sign_case] = &r;
  std::vector<std::string> out;
  for (const auto& r : reports) {
    std::vector<int> s = parse_signs(r.sign_case);
    for (int& x : s) x = -x;
    const auto it = by_case.find(signs_to_string(s));
    if (it == by_case.end()) continue;
    const CaseReport& m = *it->second;
    std::set<TwistVector> a, b;
    for (const auto& e : r.exceptions) a.insert(e.twists);
    for (const auto& e : m.exceptions) b.insert(e.twists);
    if (r.histogram != m.histogram || a != b) out.push_back(r.sign_case);
  }
  return out;
}

std::vector<OracleSample> crosscheck_family(const std::string& family, int count, int crossing_budget, int range) {
  const auto def = builtin_family(family);
  const DiagramTemplate tpl = builtin_template(family);
  const auto cases = all_sign_cases(def->bands());
  auto box = twist_box(def->bands(), range);
  std::stable_sort(box.begin(), box.end(),
                   [&](const TwistVector& a, const TwistVector& b) { return expanded_size(tpl, a) < expanded_size(tpl, b); });
  std::vector<OracleSample> out;
  for (std::size_t i = 0; i < box.size() && static_cast<int>(out.size()) < count; ++i) {
    OracleSample s;
    s.twists = box[i];
    s.crossings = expanded_size(tpl, s.twists);
    if (s.crossings > crossing_budget) break;
    const auto& signs = cases[i % cases.size()];
    s.sign_case = signs_to_string(signs);
    try {
      s.agree = crosscheck(FamilySpec(def, signs), tpl, s.twists, crossing_budget);
    } catch (const std::exception&) {
      s.agree = false;
    }
    out.push_back(s);
  }
  return out;
}

std::vector<D4Witness> find_d4_witnesses(const Registry& reg, const std::string& sign_case, int box, int limit) {
  const std::string key = signs_to_string(parse_signs(sign_case));
  const RegistryBlock* block = nullptr;
  for (const RegistryBlock* b : reg.blocks_for(key))
    if (!block || b->chain.size() > block->chain.size()) block = b;
  if (!block || block->chain.empty()) throw std::invalid_argument("no constraint chain registered for " + reg.family + " " + key);

  const int nvars = static_cast<int>(reg.vars.size());
  std::vector<bool> chained(static_cast<std::size_t>(nvars), false);
  for (const auto& step : block->chain) chained[static_cast<std::size_t>(step.var)] = true;
  std::vector<int> free;
  for (int v = 0; v < nvars; ++v)
    if (!chained[static_cast<std::size_t>(v)]) free.push_back(v);

  const CaseContext ctx(reg.family, key);
  std::vector<D4Witness> out;
  std::vector<long> idx(free.size(), 1);
  PropertyTally ignored;
  while (static_cast<int>(out.size()) < limit) {
    std::map<int, Rational> point;
    for (std::size_t i = 0; i < free.size(); ++i) point[free[i]] = Rational(idx[i]);
    bool ok = true;
    for (bool progress = true; progress && ok;) {
      progress = false;
      for (const auto& step : block->chain) {
        if (point.count(step.var)) continue;
        try {
          const Rational d = step.value.den().eval(point);
          const Rational val = d == 0 ? Rational(0) : step.value.num().eval(point) / d;
          if (d == 0 || val <= 0 || val.get_den() != 1) {
            ok = false;
            break;
          }
          point[step.var] = val;
          progress = true;
        } catch (const std::out_of_range&) {
        }
      }
    }
    if (ok && static_cast<int>(point.size()) == nvars) {
      TwistVector n;
      for (int v = 0; v < nvars; ++v) n.push_back(point[v].get_num().get_si());
      InstanceResult r = evaluate_instance(ctx, n, false, false, ignored);
      if (r.error.empty()) out.push_back({key, n, r.verdict});
    }
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] > box) idx[k++] = 1;
    if (k == idx.size()) break;
  }
  return out;
}

}  // namespace tk
