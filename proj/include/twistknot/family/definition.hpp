#pragma once

#include <memory>
#include <string>
#include <vector>

#include "twistknot/algebra/half_laurent.hpp"
#include "twistknot/algebra/multi_poly.hpp"

namespace tk {

// Node of a base-case expression: a product of link factors or an integer count.
struct BaseExpr {
  enum class Kind { Number, Bit, Add, Sub, Abs, Torus, Unknot, Unlink, Product };
  Kind kind = Kind::Number;
  long value = 0;         // Number: literal; Bit: band index (0-based)
  std::vector<int> bands;  // Torus: participating bands (0-based)
  std::vector<std::shared_ptr<const BaseExpr>> args;
};

// One "base" line: the resolution bits it constrains and the link it produces.
struct BaseRule {
  std::vector<std::pair<int, int>> pattern;  // (band, bit)
  std::shared_ptr<const BaseExpr> expr;
  std::string text;
};

// Parsed family definition file. See docs/formats.md for the grammar.
struct FamilyDefinition {
  std::string name;
  VarNames params;            // display names of the twist parameters t_1..t_k
  std::vector<int> parities;  // m_i per band
  std::vector<std::vector<std::string>> seifert_rows;  // entries in h_1..h_k
  std::vector<BaseRule> rules;

  int bands() const { return static_cast<int>(parities.size()); }
  // Linear rule lookup; throws std::runtime_error if no rule covers the mask.
  const BaseRule& rule_for(unsigned mask) const;
};

FamilyDefinition parse_family(const std::string& text);
FamilyDefinition load_family_file(const std::string& path);
// Loads <data_dir>/families/<name>.fam; results are cached and shared.
std::shared_ptr<const FamilyDefinition> builtin_family(const std::string& name);
std::vector<std::string> builtin_family_names();

// Evaluates a base expression for resolution `mask` with residual arguments from `signs`.
HalfLaurent eval_base(const BaseExpr& expr, unsigned mask, const std::vector<int>& signs,
                      const std::vector<int>& parities);

}  // namespace tk
