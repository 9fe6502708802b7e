#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "twistknot/casework/sweep.hpp"

namespace tk {

// Full sweep summary plus the derived pass flag. Keys are stable and nothing time-dependent
// is written, so equal configurations give byte-identical output.
struct SweepSummary {
  SweepConfig config;
  std::vector<CaseReport> reports;
  ExceptionClassification exceptions;
  std::vector<std::string> mirror_mismatches;

  long instances() const;
  long exception_count() const;
  long property_failures() const;
  long formula_failures() const;
  bool passed() const;
};

SweepSummary summarize(const SweepConfig& cfg, std::vector<CaseReport> reports);

nlohmann::json to_json(const TwistVector& n);
nlohmann::json to_json(const CaseVerification& v);
nlohmann::json to_json(const CaseReport& r);
nlohmann::json to_json(const SweepSummary& s);

std::string format_twists(const TwistVector& n);
std::string format_text(const SweepSummary& s);
std::string format_text(const std::vector<CaseVerification>& v);

}  // namespace tk
