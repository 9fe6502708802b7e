#pragma once

#include <map>
#include <string>
#include <vector>

#include "twistknot/algebra/half_laurent.hpp"
#include "twistknot/algebra/multi_poly.hpp"
#include "twistknot/family/definition.hpp"
#include "twistknot/family/engine.hpp"

namespace tk {

// Square matrix of affine polynomials in t_1..t_k for one sign case.
struct SeifertTemplate {
  std::string family;
  std::vector<int> signs;
  int dim = 0;
  std::vector<MultiPoly> entries;  // row-major
  VarNames params;

  int genus() const { return dim / 2; }
  const MultiPoly& at(int row, int col) const { return entries[static_cast<std::size_t>(row * dim + col)]; }
  // Integer matrix at a twist vector; throws std::domain_error on non-integral entries.
  std::vector<Integer> instantiate(const TwistVector& n) const;
};

// Builds the template from the family's rows in h_i by substituting h_i = s_i (2 t_i - m_i).
SeifertTemplate make_template(const FamilyDefinition& def, const std::vector<int>& signs);
SeifertTemplate template_7_6(const std::vector<int>& signs);
SeifertTemplate template_10_58(const std::vector<int>& signs);
SeifertTemplate template_8_12(const std::vector<int>& signs);

// Laurent polynomial in t^(1/2) whose coefficients are polynomials in the twist parameters.
class ParamLaurent {
 public:
  ParamLaurent() = default;
  static ParamLaurent monomial(const MultiPoly& c, int doubled_exponent);

  const std::map<int, MultiPoly>& terms() const { return terms_; }
  MultiPoly coefficient(int doubled_exponent) const;
  bool is_zero() const { return terms_.empty(); }
  int max_exponent() const { return terms_.rbegin()->first; }

  ParamLaurent& operator+=(const ParamLaurent& other);
  ParamLaurent& operator-=(const ParamLaurent& other);
  friend ParamLaurent operator+(ParamLaurent a, const ParamLaurent& b) { return a += b; }
  friend ParamLaurent operator-(ParamLaurent a, const ParamLaurent& b) { return a -= b; }
  friend ParamLaurent operator*(const ParamLaurent& a, const ParamLaurent& b);
  friend bool operator==(const ParamLaurent& a, const ParamLaurent& b) { return a.terms_ == b.terms_; }

  HalfLaurent eval(const std::vector<Rational>& point) const;

 private:
  void add(int e, const MultiPoly& c);
  std::map<int, MultiPoly> terms_;
};

// Coefficients a_0, a_2, a_4, ... of the Conway polynomial.
struct ConwaySeries {
  std::vector<Integer> coeffs;  // coeffs[i] multiplies z^(2i)
  Integer a(int power) const;   // a_power, zero beyond the stored range
  bool is_trivial() const;
  std::string to_string() const;
};

// det(S - t S^T) at one instance; throws std::logic_error unless the value at 1 is +-1.
HalfLaurent alexander_poly(const SeifertTemplate& tpl, const TwistVector& n);
HalfLaurent alexander_poly(const std::vector<Integer>& seifert, int dim);
// det(t^(1/2) S - t^(-1/2) S^T) rewritten in z = t^(1/2) - t^(-1/2).
ConwaySeries conway_poly(const SeifertTemplate& tpl, const TwistVector& n);
ConwaySeries conway_poly(const std::vector<Integer>& seifert, int dim);
// Rewrites a symmetric Laurent polynomial in powers of z^2; throws on a nonzero remainder.
ConwaySeries to_conway(const HalfLaurent& p);

// det(S) = coefficient of t^(2g) in det(S - t S^T).
MultiPoly leading_coeff_symbolic(const SeifertTemplate& tpl);
// Coefficient of t^(2g-1) in det(S - t S^T).
MultiPoly second_coeff_symbolic(const SeifertTemplate& tpl);
ParamLaurent alexander_symbolic(const SeifertTemplate& tpl);
// Conway coefficients a_0, a_2, ..., a_(2g) as polynomials in the parameters.
std::vector<MultiPoly> conway_symbolic(const SeifertTemplate& tpl);

}  // namespace tk
