#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twistknot/casework/exceptions.hpp"
#include "twistknot/casework/registry.hpp"
#include "twistknot/family/engine.hpp"
#include "twistknot/obstruction/obstruction.hpp"
#include "twistknot/seifert/seifert.hpp"

namespace tk {

struct SweepConfig {
  std::string family;
  int range = 4;                   // every t_i runs over [1..range]
  bool use_root5 = false;
  int crossing_budget = 0;         // oracle spot checks when positive
  int oracle_samples = 2;          // per sign case, smallest instances first
  bool check_properties = true;
  bool verify_formulas = true;     // attach registry comparisons to each case
  bool parallel = true;
  int workers = 0;                 // 0: OpenMP default
  std::vector<std::string> cases;  // empty: every sign case
};

// Named checks with (checked, failed) counts. Merging is commutative.
struct PropertyTally {
  std::map<std::string, std::array<long, 2>> counts;
  void record(const std::string& name, bool ok);
  void merge(const PropertyTally& other);
  bool all_hold() const;
  long failures() const;
};

struct InstanceResult {
  TwistVector twists;
  ObstructionVerdict verdict;
  bool jones_is_one = false;
  bool conway_is_one = false;
  bool root5_inconclusive = false;  // evaluated for exceptions only
  std::string error;                // nonempty if the pipeline threw
  std::vector<std::string> failed_properties;
};

struct CaseReport {
  std::string family;
  std::string sign_case;
  long instances = 0;
  std::map<std::string, long> histogram;  // excluding gate name -> instance count
  std::vector<InstanceResult> exceptions;
  std::vector<TwistVector> d4_instances;  // excluded only once the fourth derivative is used
  std::vector<InstanceResult> failures;   // instances with a failed property or an error
  PropertyTally properties;
  std::optional<CaseVerification> formulas;

  long excluded() const;
  bool consistent() const { return excluded() + static_cast<long>(exceptions.size()) == instances; }
};

// Everything needed to evaluate instances of one sign case; read-only once built.
class CaseContext {
 public:
  CaseContext(const std::string& family, const std::string& sign_case);
  const FamilySpec& spec() const { return spec_; }
  const FamilySpec& mirror() const { return mirror_; }
  const SeifertTemplate& seifert() const { return seifert_; }
  const MultiPoly& leading() const { return leading_; }

 private:
  FamilySpec spec_;
  FamilySpec mirror_;
  SeifertTemplate seifert_;
  MultiPoly leading_;
};

// Runs the obstruction pipeline on one instance, recording property checks in `tally`.
InstanceResult evaluate_instance(const CaseContext& ctx, const TwistVector& n, bool use_root5, bool check_properties,
                                 PropertyTally& tally);

// Every twist vector in [1..range]^k in lexicographic order.
std::vector<TwistVector> twist_box(int bands, int range);

CaseReport sweep_case(const SweepConfig& cfg, const std::string& sign_case);
// One report per sign case in canonical order.
std::vector<CaseReport> sweep(const SweepConfig& cfg);

struct ExceptionRecord {
  std::string family;
  std::string sign_case;
  int row = 0;
  std::string pattern;     // printed tuple
  std::string twist_text;  // pattern on the twist counts
  std::vector<TwistVector> instances;
  bool jones_is_one = true;
  bool conway_is_one = true;
  bool root5_inconclusive = true;
  bool confirmed() const { return !instances.empty() && jones_is_one && conway_is_one && root5_inconclusive; }
};

struct ExceptionClassification {
  std::vector<ExceptionRecord> records;  // one per table row, in table order
  std::vector<std::pair<std::string, TwistVector>> unmatched;
  // Sign cases with at least one exception instance.
  std::vector<std::string> cases_with_exceptions;
  bool all_matched() const { return unmatched.empty(); }
};

// Assigns each exception instance to every table row it lies in.
ExceptionClassification classify_exceptions(const std::vector<CaseReport>& reports, const ExceptionTable& table);

// Cases whose report differs from the report of the negated case (histogram or exception set).
std::vector<std::string> mirror_mismatches(const std::vector<CaseReport>& reports);

struct OracleSample {
  std::string sign_case;
  TwistVector twists;
  int crossings = 0;
  bool agree = false;
};

// Instances with the smallest expanded diagrams, rotating through the sign cases, each checked
// against the state-sum Jones polynomial.
std::vector<OracleSample> crosscheck_family(const std::string& family, int count, int crossing_budget = 18, int range = 3);

struct D4Witness {
  std::string sign_case;
  TwistVector twists;
  ObstructionVerdict verdict;
};

// Walks the free variables of the case's constraint chain over [1..box] and keeps points where
// every chained variable is a positive integer; each becomes an instance to evaluate.
std::vector<D4Witness> find_d4_witnesses(const Registry& reg, const std::string& sign_case, int box = 30, int limit = 2);

}  // namespace tk
