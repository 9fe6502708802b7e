// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "twistknot/casework/report.hpp"
#include "twistknot/casework/sweep.hpp"
#include "twistknot/data_dir.hpp"

using namespace tk;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

template <class F>
void criterion(int n, const std::string& title, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("threw: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(1);
  line << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << "  " << title << "  [" << o.detail << "; " << secs << " s]";
  std::cout << line.str() << std::endl;
}

SweepSummary run_sweep(const std::string& family, int budget) {
  const auto t0 = std::chrono::steady_clock::now();
  SweepConfig cfg;
  cfg.family = family;
  cfg.range = 4;
  cfg.crossing_budget = budget;
  SweepSummary s = summarize(cfg, sweep(cfg));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << "  sweep " << family << ": " << s.instances() << " instances in " << static_cast<long>(secs) << " s" << std::endl;
  return s;
}

PropertyTally merged_properties(const std::vector<const SweepSummary*>& sweeps) {
  PropertyTally all;
  for (const auto* s : sweeps)
    for (const auto& r : s->reports) all.merge(r.properties);
  return all;
}

// Lines "k x s : polynomial in n".
Outcome derivative_table() {
  std::ifstream in(data_dir() + "/prefactor_table.txt");
  if (!in) return {false, "prefactor_table.txt not found"};
  const VarNames names{"n"};
  int checked = 0, bad = 0;
  std::set<std::string> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    int k = 0, x = 0;
    std::string s, colon;
    ls >> k >> x >> s >> colon;
    std::string expr;
    std::getline(ls, expr);
    const int sign = s == "+" ? 1 : -1;
    ++checked;
    if (!(prefactor_deriv_poly(sign, x, k) == parse_polynomial(expr, names))) {
      ++bad;
      std::cerr << "  table mismatch at k=" << k << " x=" << x << " sign " << s << '\n';
    }
    entries.insert(std::to_string(k) + "/" + std::to_string(x));
  }
  const bool complete = entries.size() == 10 && checked == 20;
  return {bad == 0 && complete,
          std::to_string(entries.size()) + " entries, " + std::to_string(checked) + " signed identities, " + std::to_string(bad) + " mismatches"};
}

Outcome registry_formulas() {
  long formulas = 0, claims = 0, bad = 0, corrected = 0;
  for (const auto& fam : builtin_family_names()) {
    for (const auto& v : verify_registry(*builtin_registry(fam))) {
      for (const auto& f : v.formulas) {
        ++formulas;
        if (f.corrected) ++corrected;
        if (!f.pass) {
          ++bad;
          std::cerr << "  " << fam << " " << v.sign_case << " " << quantity_name(f.quantity) << " stage " << f.stage << " line " << f.line << '\n';
        }
      }
      for (const auto& c : v.claims) {
        ++claims;
        if (!c.pass) ++bad;
      }
    }
  }
  return {bad == 0 && formulas > 0, std::to_string(formulas) + " formulas (" + std::to_string(corrected) + " with recorded corrections), " +
                                        std::to_string(claims) + " sign claims, " + std::to_string(bad) + " failures"};
}

Outcome casework_7_6(const SweepSummary& s) {
  const auto table = builtin_exception_table("7_6");
  const auto expected = table->cases();
  const auto& got = s.exceptions.cases_with_exceptions;
  const std::set<std::string> exp_set(expected.begin(), expected.end()), got_set(got.begin(), got.end());
  long confirmed = 0;
  for (const auto& r : s.exceptions.records) confirmed += r.confirmed() ? 1 : 0;
  bool consistent = true, trivial = true;
  for (const auto& r : s.reports) {
    consistent = consistent && r.consistent();
    for (const auto& e : r.exceptions) trivial = trivial && e.jones_is_one && e.conway_is_one;
  }
  const bool pass = s.instances() == 32 * 1024 && consistent && s.exceptions.all_matched() && exp_set == got_set &&
                    confirmed == static_cast<long>(table->rows.size()) && trivial && s.mirror_mismatches.empty();
  std::ostringstream d;
  d << s.instances() << " instances, " << s.exception_count() << " exceptions, " << s.exceptions.unmatched.size() << " unmatched, "
    << got_set.size() << " cases with exceptions vs " << exp_set.size() << " tabulated (" << table->rows.size() << " rows, " << confirmed
    << " confirmed)";
  return {pass, d.str()};
}

Outcome casework_10_58(const SweepSummary& s) {
  const auto reg = builtin_registry("10_58");
  int d4_cases = 0, witnessed = 0;
  std::ostringstream w;
  for (const auto& c : reg->registered_cases()) {
    bool needs = false;
    for (const auto* b : reg->blocks_for(c)) needs = needs || b->requires_d4;
    if (!needs) continue;
    ++d4_cases;
    for (const auto& x : find_d4_witnesses(*reg, c, 30, 1)) {
      const auto& v = x.verdict;
      if (v.excluded_by == Gate::D4 && !v.alexander_leading_nonzero && !v.d2_nonzero && !v.d3_nonzero) {
        ++witnessed;
        w << " " << c << format_twists(x.twists);
        break;
      }
    }
  }
  bool consistent = true;
  for (const auto& r : s.reports) consistent = consistent && r.consistent();
  const bool pass = s.instances() == 32 * 1024 && consistent && s.exception_count() == 0 && d4_cases > 0 && witnessed == d4_cases;
  std::ostringstream d;
  d << s.instances() << " instances, " << s.exception_count() << " exceptions; d4 needed in " << witnessed << "/" << d4_cases << " cases:" << w.str();
  return {pass, d.str()};
}

Outcome corollary_8_12(const SweepSummary& s) {
  const auto def = builtin_family("8_12");
  int monomials = 0, cases = 0;
  for (const auto& signs : all_sign_cases(def->bands())) {
    ++cases;
    const CaseContext ctx("8_12", signs_to_string(signs));
    if (ctx.leading().terms().size() == 1) ++monomials;
  }
  long by_leading = 0;
  for (const auto& r : s.reports) {
    const auto it = r.histogram.find("alexander_leading");
    if (it != r.histogram.end()) by_leading += it->second;
  }
  const long total = s.instances();
  const bool pass = cases > 0 && monomials == cases && total == 256L * cases && by_leading == total;
  return {pass, std::to_string(monomials) + "/" + std::to_string(cases) + " monomial leading coefficients, " + std::to_string(by_leading) + "/" +
                    std::to_string(total) + " excluded by the Alexander gate"};
}

Outcome oracle_equivalence() {
  std::ostringstream d;
  bool pass = true;
  for (const auto& fam : builtin_family_names()) {
    const auto samples = crosscheck_family(fam, 20, 18);
    long agree = 0;
    int max_crossings = 0;
    for (const auto& s : samples) {
      agree += s.agree ? 1 : 0;
      max_crossings = std::max(max_crossings, s.crossings);
    }
    pass = pass && samples.size() >= 20 && agree == static_cast<long>(samples.size()) && max_crossings <= 18;
    if (d.tellp() > 0) d << ", ";
    d << fam << " " << agree << "/" << samples.size() << " (max " << max_crossings << " crossings)";
  }
  return {pass, d.str()};
}

Outcome property_suites(const PropertyTally& t) {
  static const char* required[] = {"V(1)=1",         "V'(1)=0",         "Delta(1)=+-1",   "Conway(0)=1",
                                   "V''(1)=-6a2",    "mirror symmetry", "skein per band", "ito_residual(2,1)=j4"};
  bool pass = t.all_hold();
  std::ostringstream d;
  long checks = 0;
  for (const char* name : required) {
    const auto it = t.counts.find(name);
    if (it == t.counts.end() || it->second[0] == 0) {
      pass = false;
      d << name << " never exercised; ";
    }
  }
  for (const auto& [name, c] : t.counts) {
    checks += c[0];
    if (c[1] != 0) d << name << " failed " << c[1] << "x; ";
  }
  d << t.counts.size() << " properties, " << checks << " checks, " << t.failures() << " failures";
  return {pass, d.str()};
}

Outcome fourth_derivative_consistency(const PropertyTally& t) {
  bool pass = true;
  std::ostringstream d;
  for (const char* name : {"j4 series equals j4 from derivatives", "96w4+210v6-10v4 vanishes iff j4 does", "ito_residual(2,1)=j4"}) {
    const auto it = t.counts.find(name);
    const long n = it == t.counts.end() ? 0 : it->second[0];
    const long f = it == t.counts.end() ? 0 : it->second[1];
    pass = pass && n > 0 && f == 0;
    d << "'" << name << "' " << n - f << "/" << n << "; ";
  }
  d << "over trivial-Conway instances";
  return {pass, d.str()};
}

}  // namespace

int main() {
  std::cout << "acceptance run, twist box [1..4]" << std::endl;
  criterion(1, "prefactor derivative table", derivative_table);
  criterion(2, "registered case formulas", registry_formulas);

  // Shared by criteria 3 to 8.
  const SweepSummary s76 = run_sweep("7_6", 16);
  const SweepSummary s1058 = run_sweep("10_58", 0);
  const SweepSummary s812 = run_sweep("8_12", 16);
  const PropertyTally props = merged_properties({&s76, &s1058, &s812});

  criterion(3, "7_6 casework", [&] { return casework_7_6(s76); });
  criterion(4, "10_58 casework", [&] { return casework_10_58(s1058); });
  criterion(5, "8_12 corollary", [&] { return corollary_8_12(s812); });
  criterion(6, "state-sum oracle equivalence", oracle_equivalence);
  criterion(7, "property suites", [&] { return property_suites(props); });
  criterion(8, "fourth-derivative consistency", [&] { return fourth_derivative_consistency(props); });

  std::cout << (failures == 0 ? "all criteria PASS" : std::to_string(failures) + " criteria FAIL") << std::endl;
  return failures == 0 ? 0 : 1;
}
