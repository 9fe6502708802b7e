#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "twistknot/algebra/multi_poly.hpp"
#include "twistknot/family/definition.hpp"

namespace tk {

// Symbolic quantities a registry line can refer to.
enum class Quantity { Leading, Second, D2, D3, D4 };
std::string quantity_name(Quantity q);
// Throws std::invalid_argument on an unknown name.
Quantity parse_quantity(const std::string& name);

// "var = expr": the constraint under which the previous quantity vanishes.
struct ChainStep {
  int var = 0;
  std::string text;
  RatFunc value;
};

// A published expression for a quantity after the first `stage` chain steps.
struct Expectation {
  Quantity quantity = Quantity::Leading;
  int stage = 0;
  std::string verbatim;
  RatFunc expr;
  // Replacement used when the verbatim text is a known misprint.
  std::optional<std::string> corrected;
  std::optional<RatFunc> corrected_expr;
  std::string note;
  std::string only;  // restricts the line to one case of its block when nonempty
  int line = 0;

  const RatFunc& effective() const { return corrected_expr ? *corrected_expr : expr; }
};

enum class ClaimSign { Positive, Negative };

// "always positive" style statements about a quantity after `stage` chain steps.
struct Claim {
  Quantity quantity = Quantity::Leading;
  int stage = 0;
  ClaimSign sign = ClaimSign::Positive;
  std::string only;
  int line = 0;
};

struct RegistryBlock {
  std::vector<std::string> cases;
  std::vector<ChainStep> chain;
  std::vector<Expectation> expects;
  std::vector<Claim> claims;
  bool requires_d4 = false;
};

struct Registry {
  std::string family;
  int alexander_sign = 1;
  VarNames vars;
  std::vector<RegistryBlock> blocks;

  // Blocks listing this case, in file order.
  std::vector<const RegistryBlock*> blocks_for(const std::string& sign_case) const;
  std::vector<std::string> registered_cases() const;
};

// Variables come from the named family's parameter list. Throws std::invalid_argument
// with a line number on malformed input.
Registry parse_registry(const std::string& text, const FamilyDefinition& def);
Registry load_registry_file(const std::string& path, const FamilyDefinition& def);
// data/registry/<family>.reg
std::shared_ptr<const Registry> builtin_registry(const std::string& family);

struct FormulaCheck {
  std::string family;
  std::string sign_case;
  Quantity quantity = Quantity::Leading;
  int stage = 0;
  std::string expression;  // the text that was compared
  std::string verbatim;
  bool corrected = false;
  bool verbatim_pass = false;
  bool pass = false;
  std::string note;
  int line = 0;
};

struct ClaimCheck {
  std::string family;
  std::string sign_case;
  Quantity quantity = Quantity::Leading;
  int stage = 0;
  ClaimSign sign = ClaimSign::Positive;
  std::string method;  // "certificate" or "sampled"
  long samples = 0;
  bool pass = false;
  int line = 0;
};

struct CaseVerification {
  std::string family;
  std::string sign_case;
  std::vector<FormulaCheck> formulas;
  std::vector<ClaimCheck> claims;
  bool passed() const;
};

// The case's quantities computed symbolically, with the global Alexander sign applied.
class SymbolicCase {
 public:
  SymbolicCase(const std::string& family, const std::string& sign_case, int alexander_sign);
  const RatFunc& quantity(Quantity q);

 private:
  std::string family_;
  std::vector<int> signs_;
  int alexander_sign_;
  std::map<Quantity, RatFunc> cache_;
};

// Applies the first `stage` chain steps.
RatFunc apply_chain(const RatFunc& value, const std::vector<ChainStep>& chain, int stage);

// Compares every registered formula and claim for the case. Throws std::invalid_argument
// if the case has no registry entry. Claims without a certificate are sampled over
// [1..claim_box] for the variables left free by the chain.
CaseVerification verify_paper_case(const Registry& reg, const std::string& sign_case, int claim_box = 6);
std::vector<CaseVerification> verify_registry(const Registry& reg, int claim_box = 6);

}  // namespace tk
