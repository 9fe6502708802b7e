#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "twistknot/algebra/cyclo5.hpp"
#include "twistknot/algebra/numbers.hpp"

namespace tk {

/// Laurent polynomial in t^(1/2) with integer coefficients.
///
/// Exponents are stored doubled: the term c * t^(e/2) lives at key e. Storage is
/// dense between the lowest and highest nonzero exponent, so there are never
/// leading or trailing zero coefficients and the zero polynomial is empty.
class HalfLaurent {
 public:
  HalfLaurent() = default;

  static HalfLaurent constant(const Integer& c);
  static HalfLaurent monomial(const Integer& c, int doubled_exponent);
  static HalfLaurent t_power(int doubled_exponent) { return monomial(1, doubled_exponent); }
  // -(t^(1/2) + t^(-1/2)), the factor for a split unknot component.
  static HalfLaurent unknot_factor();
  // t^(1/2) - t^(-1/2).
  static HalfLaurent skein_z();

  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const;
  int min_exponent() const { return low_; }
  int max_exponent() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }
  Integer coefficient(int doubled_exponent) const;
  // Nonzero terms in increasing exponent order.
  std::vector<std::pair<int, Integer>> terms() const;
  // All exponents integral (even doubled exponents).
  bool is_knot_valued() const;

  HalfLaurent& operator+=(const HalfLaurent& other);
  HalfLaurent& operator-=(const HalfLaurent& other);
  HalfLaurent& operator*=(const HalfLaurent& other);
  HalfLaurent operator-() const;
  friend HalfLaurent operator+(HalfLaurent a, const HalfLaurent& b) { return a += b; }
  friend HalfLaurent operator-(HalfLaurent a, const HalfLaurent& b) { return a -= b; }
  friend HalfLaurent operator*(const HalfLaurent& a, const HalfLaurent& b);
  friend HalfLaurent operator*(const Integer& s, const HalfLaurent& a);
  friend bool operator==(const HalfLaurent& a, const HalfLaurent& b) {
    return a.low_ == b.low_ && a.coeffs_ == b.coeffs_;
  }

  // Multiplication by t^(doubled_exponent / 2).
  HalfLaurent shifted(int doubled_exponent) const;
  // t -> t^(-1).
  HalfLaurent mirrored() const;
  HalfLaurent pow(unsigned exponent) const;
  // Product with 1 + t^(step/2) + ... + t^((count-1) step/2), in linear time.
  HalfLaurent geometric_mul(int doubled_step, int count) const;
  // Value at t = 1.
  Integer at_one() const;
  // k-th derivative at t = 1 for k = 0..kmax.
  std::vector<Rational> derivs_at_one(int kmax) const;
  // Image under t -> x in Q[x]/Phi_5; throws std::domain_error on half-integral exponents.
  Cyclo5 eval_root5() const;

  // Canonical text, highest exponent first: "-t^(5/2) - t^(1/2)", "t^2 - 1 + t^(-1)".
  std::string to_string() const;
  // Inverse of to_string; throws std::invalid_argument on malformed input.
  static HalfLaurent parse(std::string_view text);

 private:
  void trim();
  Integer& slot(int doubled_exponent);

  int low_ = 0;
  std::vector<Integer> coeffs_;
};

}  // namespace tk
