#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "twistknot/algebra/numbers.hpp"

namespace tk {

inline constexpr int kMaxVars = 6;
using Monomial = std::array<std::uint16_t, kMaxVars>;
// Display names for variable indices; index i prints as names[i].
using VarNames = std::vector<std::string>;

// Graded lexicographic order: total degree first, then exponents of x0, x1, ...
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// Polynomial over Q in up to kMaxVars variables identified by index.
class MultiPoly {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexLess>;

  MultiPoly() = default;
  static MultiPoly constant(const Rational& c);
  static MultiPoly variable(int index);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  const TermMap& terms() const { return terms_; }
  int total_degree() const;
  int degree_in(int var) const;
  // Bitmask of variables that occur.
  unsigned used_vars() const;

  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const MultiPoly& other);
  MultiPoly operator-() const;
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const Rational& s, const MultiPoly& a);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }
  MultiPoly pow(unsigned exponent) const;

  // Exact value at a point; throws std::out_of_range if a used variable has no value.
  Rational eval(const std::map<int, Rational>& point) const;
  // Fast path: point[i] is the value of variable i (must cover every used variable).
  Rational eval(const std::vector<Rational>& point) const;
  // Replace variable `var` by `value`.
  MultiPoly substitute(int var, const MultiPoly& value) const;
  // Simultaneous substitution; images[i] replaces variable i (shorter lists keep the rest).
  MultiPoly compose(const std::vector<MultiPoly>& images) const;
  // Coefficients c_k with p = sum c_k var^k.
  std::vector<MultiPoly> coefficients_in(int var) const;

  std::string to_string(const VarNames& names) const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  TermMap terms_;
};

// Quotient of polynomials with a nonzero denominator; kept unreduced.
class RatFunc {
 public:
  RatFunc() : den_(MultiPoly::constant(1)) {}
  RatFunc(MultiPoly num) : num_(std::move(num)), den_(MultiPoly::constant(1)) {}  // NOLINT
  RatFunc(MultiPoly num, MultiPoly den);

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  bool is_polynomial() const { return den_.is_constant(); }
  // Numerator divided by a constant denominator; throws std::domain_error otherwise.
  MultiPoly as_polynomial() const;

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc operator-() const { return {-num_, den_}; }
  RatFunc pow(unsigned exponent) const { return {num_.pow(exponent), den_.pow(exponent)}; }
  // Cross-multiplied comparison.
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ * b.den_ == b.num_ * a.den_; }

  // Replace `var` by value = N/D, clearing denominators: sum c_k N^k D^(deg-k) over D^deg.
  RatFunc substitute(int var, const RatFunc& value) const;

  std::string to_string(const VarNames& names) const;

 private:
  MultiPoly num_;
  MultiPoly den_;
};

// Parses + - * / ^, parentheses, integers and variables. Juxtaposition multiplies, and
// an unknown identifier made of single-letter variable names ("ab") is their product.
// The Unicode minus sign is accepted. Throws std::invalid_argument.
RatFunc parse_expression(const std::string& text, const VarNames& names);
MultiPoly parse_polynomial(const std::string& text, const VarNames& names);

}  // namespace tk
