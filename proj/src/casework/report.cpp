#include "twistknot/casework/report.hpp"

#include <iomanip>
#include <sstream>

namespace tk {

using nlohmann::json;

namespace {

const Gate kGateColumns[] = {Gate::AlexanderLeading, Gate::D2, Gate::D3, Gate::ConwayTrivial, Gate::D4, Gate::Root5};

json tally_json(const PropertyTally& t) {
  json out = json::object();
  for (const auto& [name, c] : t.counts) out[name] = {{"checked", c[0]}, {"failed", c[1]}};
  return out;
}

long count_formula_failures(const CaseVerification& v) {
  long n = 0;
  for (const auto& f : v.formulas) n += f.pass ? 0 : 1;
  for (const auto& c : v.claims) n += c.pass ? 0 : 1;
  return n;
}

}  // namespace

long SweepSummary::instances() const {
  long n = 0;
  for (const auto& r : reports) n += r.instances;
  return n;
}

long SweepSummary::exception_count() const {
  long n = 0;
  for (const auto& r : reports) n += static_cast<long>(r.exceptions.size());
  return n;
}

long SweepSummary::property_failures() const {
  long n = 0;
  for (const auto& r : reports) n += r.properties.failures();
  return n;
}

long SweepSummary::formula_failures() const {
  long n = 0;
  for (const auto& r : reports)
    if (r.formulas) n += count_formula_failures(*r.formulas);
  return n;
}

bool SweepSummary::passed() const {
  for (const auto& r : reports)
    if (!r.consistent()) return false;
  return exceptions.all_matched() && mirror_mismatches.empty() && property_failures() == 0 && formula_failures() == 0;
}

SweepSummary summarize(const SweepConfig& cfg, std::vector<CaseReport> reports) {
  SweepSummary s;
  s.config = cfg;
  s.reports = std::move(reports);
  s.exceptions = classify_exceptions(s.reports, *builtin_exception_table(cfg.family));
  s.mirror_mismatches = mirror_mismatches(s.reports);
  return s;
}

json to_json(const TwistVector& n) { return json(std::vector<long>(n.begin(), n.end())); }

json to_json(const CaseVerification& v) {
  json formulas = json::array(), claims = json::array();
  for (const auto& f : v.formulas) {
    json j = {{"quantity", quantity_name(f.quantity)}, {"stage", f.stage},     {"expression", f.expression},
              {"pass", f.pass},                        {"corrected", f.corrected}, {"line", f.line}};
    if (f.corrected) {
      j["verbatim"] = f.verbatim;
      j["verbatim_pass"] = f.verbatim_pass;
      j["note"] = f.note;
    }
    formulas.push_back(j);
  }
  for (const auto& c : v.claims)
    claims.push_back({{"quantity", quantity_name(c.quantity)},
                      {"stage", c.stage},
                      {"sign", c.sign == ClaimSign::Positive ? "positive" : "negative"},
                      {"method", c.method},
                      {"samples", c.samples},
                      {"pass", c.pass},
                      {"line", c.line}});
  return {{"family", v.family}, {"sign_case", v.sign_case}, {"passed", v.passed()}, {"formulas", formulas}, {"claims", claims}};
}

json to_json(const CaseReport& r) {
  json hist = json::object();
  for (const auto& [g, c] : r.histogram) hist[g] = c;
  json exceptions = json::array();
  for (const auto& e : r.exceptions)
    exceptions.push_back({{"twists", to_json(e.twists)},
                          {"jones_is_one", e.jones_is_one},
                          {"conway_is_one", e.conway_is_one},
                          {"root5_inconclusive", e.root5_inconclusive}});
  json d4 = json::array();
  for (const auto& n : r.d4_instances) d4.push_back(to_json(n));
  json failures = json::array();
  for (const auto& f : r.failures) failures.push_back({{"twists", to_json(f.twists)}, {"error", f.error}, {"failed", f.failed_properties}});
  return {{"sign_case", r.sign_case},
          {"instances", r.instances},
          {"excluded", r.excluded()},
          {"histogram", hist},
          {"exceptions", exceptions},
          {"d4_instances", d4},
          {"properties", tally_json(r.properties)},
          {"failures", failures},
          {"formulas", r.formulas ? to_json(*r.formulas) : json(nullptr)}};
}

json to_json(const SweepSummary& s) {
  json cases = json::array();
  for (const auto& r : s.reports) cases.push_back(to_json(r));
  json records = json::array();
  for (const auto& rec : s.exceptions.records) {
    json inst = json::array();
    for (const auto& n : rec.instances) inst.push_back(to_json(n));
    records.push_back({{"row", rec.row},
                       {"sign_case", rec.sign_case},
                       {"pattern", rec.pattern},
                       {"twist_pattern", rec.twist_text},
                       {"instances", inst},
                       {"jones_is_one", rec.jones_is_one},
                       {"conway_is_one", rec.conway_is_one},
                       {"root5_inconclusive", rec.root5_inconclusive},
                       {"confirmed", rec.confirmed()}});
  }
  json unmatched = json::array();
  for (const auto& [c, n] : s.exceptions.unmatched) unmatched.push_back({{"sign_case", c}, {"twists", to_json(n)}});
  PropertyTally all;
  for (const auto& r : s.reports) all.merge(r.properties);
  return {{"family", s.config.family},
          {"range", s.config.range},
          {"use_root5", s.config.use_root5},
          {"crossing_budget", s.config.crossing_budget},
          {"cases", cases},
          {"exception_table",
           {{"records", records}, {"unmatched", unmatched}, {"cases_with_exceptions", s.exceptions.cases_with_exceptions}}},
          {"mirror_mismatches", s.mirror_mismatches},
          {"properties", tally_json(all)},
          {"summary",
           {{"instances", s.instances()},
            {"exceptions", s.exception_count()},
            {"property_failures", s.property_failures()},
            {"formula_failures", s.formula_failures()},
            {"passed", s.passed()}}}};
}

std::string format_twists(const TwistVector& n) {
  std::string s = "(";
  for (std::size_t i = 0; i < n.size(); ++i) s += (i ? "," : "") + std::to_string(n[i]);
  return s + ")";
}

std::string format_text(const SweepSummary& s) {
  std::ostringstream out;
  out << s.config.family << " sweep over t_i in [1.." << s.config.range << "]" << (s.config.use_root5 ? " with root5" : "") << "\n\n";
  out << std::left << std::setw(8) << "case" << std::right << std::setw(10) << "instances";
  for (Gate g : kGateColumns) out << std::setw(19) << gate_name(g);
  out << std::setw(12) << "exceptions" << std::setw(12) << "prop.fail" << std::setw(10) << "formulas" << "\n";
  for (const auto& r : s.reports) {
    out << std::left << std::setw(8) << r.sign_case << std::right << std::setw(10) << r.instances;
    for (Gate g : kGateColumns) {
      const auto it = r.histogram.find(gate_name(g));
      out << std::setw(19) << (it == r.histogram.end() ? 0 : it->second);
    }
    std::string formulas = "-";
    if (r.formulas) formulas = r.formulas->passed() ? "PASS" : "FAIL";
    out << std::setw(12) << r.exceptions.size() << std::setw(12) << r.properties.failures() << std::setw(10) << formulas << "\n";
    if (r.histogram.count("error")) out << "  evaluation errors: " << r.histogram.at("error") << "\n";
  }
  if (!s.exceptions.records.empty()) {
    out << "\nexception table\n";
    for (const auto& rec : s.exceptions.records)
      out << "  " << std::setw(2) << rec.row << "  " << rec.sign_case << "  " << std::left << std::setw(22) << rec.pattern << std::right
          << std::setw(6) << rec.instances.size() << " instances  " << (rec.confirmed() ? "confirmed" : "NOT CONFIRMED") << "\n";
  }
  for (const auto& [c, n] : s.exceptions.unmatched) out << "  unmatched exception " << c << " " << format_twists(n) << "\n";
  for (const auto& c : s.mirror_mismatches) out << "  mirror mismatch " << c << "\n";
  out << "\ninstances " << s.instances() << ", exceptions " << s.exception_count() << ", property failures " << s.property_failures()
      << ", formula failures " << s.formula_failures() << ": " << (s.passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

std::string format_text(const std::vector<CaseVerification>& v) {
  std::ostringstream out;
  long pass = 0, total = 0;
  for (const auto& cv : v) {
    for (const auto& f : cv.formulas) {
      ++total;
      pass += f.pass ? 1 : 0;
      out << cv.family << " " << cv.sign_case << "  " << std::left << std::setw(8) << quantity_name(f.quantity) << "after " << f.stage
          << "  " << (f.pass ? "PASS" : "FAIL") << (f.corrected ? " (corrected)" : "") << "  " << f.expression << "\n";
      if (f.corrected) out << "    printed: " << f.verbatim << (f.verbatim_pass ? "  (also matches)" : "  (does not match)") << "\n    " << f.note << "\n";
    }
    for (const auto& c : cv.claims) {
      ++total;
      pass += c.pass ? 1 : 0;
      out << cv.family << " " << cv.sign_case << "  " << std::left << std::setw(8) << quantity_name(c.quantity) << "after " << c.stage
          << "  " << (c.pass ? "PASS" : "FAIL") << "  " << (c.sign == ClaimSign::Positive ? "positive" : "negative") << " by " << c.method;
      if (c.method == "sampled") out << " (" << c.samples << " points)";
      out << "\n";
    }
  }
  out << pass << "/" << total << " checks pass\n";
  return out.str();
}

}  // namespace tk
