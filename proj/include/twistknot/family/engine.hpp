#pragma once

#include <memory>
#include <string>
#include <vector>

#include "twistknot/algebra/half_laurent.hpp"
#include "twistknot/algebra/multi_poly.hpp"
#include "twistknot/family/definition.hpp"

namespace tk {

struct BandSpec {
  int sign = 1;    // s_i
  int parity = 0;  // m_i
};

// Positive twist counts t_1..t_k.
using TwistVector = std::vector<long>;

// "++-+-" <-> {+1,+1,-1,+1,-1}. Throws std::invalid_argument on other characters.
std::vector<int> parse_signs(const std::string& text);
std::string signs_to_string(const std::vector<int>& signs);
// All 2^k sign vectors in the order +...+, +...+-, ..., -...-.
std::vector<std::vector<int>> all_sign_cases(int k);

// c^s(t, n, x): t^(2sn) when x = 1, else (1 + ... + t^(2s(n-1))) (s t^s)(t^(1/2) - t^(-1/2)).
HalfLaurent prefactor(int sign, int x, long n);
// p * prefactor(sign, x, n) in time linear in the size of the result.
HalfLaurent apply_prefactor(const HalfLaurent& p, int sign, int x, long n);
// k-th t-derivative of prefactor(sign, x, n) at t = 1 as a polynomial in n (variable 0).
MultiPoly prefactor_deriv_poly(int sign, int x, int k);

// Jones polynomial of the two-circle pattern with bands carrying signs in {+1, -1, 0}.
HalfLaurent xn_jones(const std::vector<int>& signs);

// Truncated derivative vectors (value, first, ..., kmax-th derivative at t = 1).
template <class T>
std::vector<T> leibniz(const std::vector<T>& f, const std::vector<T>& g);

// A family with a fixed sign case. Base cases are computed once at construction.
class FamilySpec {
 public:
  FamilySpec(std::shared_ptr<const FamilyDefinition> def, std::vector<int> signs);

  const FamilyDefinition& definition() const { return *def_; }
  const std::string& name() const { return def_->name; }
  int size() const { return static_cast<int>(bands_.size()); }
  const std::vector<BandSpec>& bands() const { return bands_; }
  std::vector<int> signs() const;
  std::string case_string() const { return signs_to_string(signs()); }
  // V_x for resolution bitmask x (bit i = band i retained).
  const HalfLaurent& base_case(unsigned mask) const { return base_[mask]; }
  // The same family with every sign negated.
  FamilySpec mirrored() const;

  // Sum over resolutions of prod prefactor * V_x, contracted one band at a time.
  HalfLaurent assemble_jones(const TwistVector& n) const;
  // Direct 2^k-term expansion; reference for the contraction.
  HalfLaurent assemble_jones_expanded(const TwistVector& n) const;
  // The part of the sum with band `band` resolved and its prefactor dropped.
  HalfLaurent resolved_partial(const TwistVector& n, int band) const;

  // Derivatives at 1 from the assembled polynomial; checks them against the Leibniz route
  // and throws std::logic_error on disagreement.
  std::vector<Rational> jones_derivs(const TwistVector& n, int kmax = 4) const;
  // Leibniz route alone, from prefactor derivative polynomials and base-case derivatives.
  std::vector<Rational> leibniz_derivs(const TwistVector& n, int kmax = 4) const;
  // V^(k)(1) as polynomials in t_1..t_k (variables 0..k-1).
  std::vector<MultiPoly> symbolic_derivs(int kmax = 4) const;

 private:
  void check_twists(const TwistVector& n) const;

  std::shared_ptr<const FamilyDefinition> def_;
  std::vector<BandSpec> bands_;
  std::vector<HalfLaurent> base_;
  static constexpr int kJetOrder = 4;
  std::vector<std::vector<Rational>> base_jets_;
};

}  // namespace tk
