#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "twistknot/algebra/multi_poly.hpp"
#include "twistknot/family/engine.hpp"

namespace tk {

// One row of an exception table: a parametric set of twist vectors within a sign case.
struct ExceptionPattern {
  int row = 0;  // 1-based position in the file
  std::string sign_case;
  std::string printed;              // signed tuple as published, e.g. "(1,e+1,-1,d,-e)"
  std::vector<MultiPoly> signed_values;
  std::string twist_text;           // twist counts t_i, e.g. "1, e+1, 1, d, e"
  std::vector<MultiPoly> twists;

  // Pattern variable values if n lies in the pattern with every variable a positive integer.
  std::optional<std::vector<long>> match(const TwistVector& n) const;
};

struct ExceptionTable {
  std::string family;
  VarNames vars;
  std::vector<ExceptionPattern> rows;

  std::vector<const ExceptionPattern*> rows_for(const std::string& sign_case) const;
  std::vector<std::string> cases() const;
};

// Throws std::invalid_argument on malformed rows, on a twist count that is not the
// sign times the printed value, or on a pattern variable no twist count determines.
ExceptionTable parse_exception_table(const std::string& text, const FamilyDefinition& def);
ExceptionTable load_exception_table(const std::string& path, const FamilyDefinition& def);
// data/registry/<family>.exceptions, or an empty table when the family has none.
std::shared_ptr<const ExceptionTable> builtin_exception_table(const std::string& family);

}  // namespace tk
