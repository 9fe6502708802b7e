#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twistknot/algebra/half_laurent.hpp"
#include "twistknot/seifert/seifert.hpp"

namespace tk {

// j_n = coefficient of h^n in V(e^h), n = 0..N.
struct HExpansion {
  std::vector<Rational> j;
};

// Term-by-term exponential substitution t = e^h.
HExpansion h_coeffs(const HalfLaurent& v, int order = 6);
// The same coefficients from derivatives at 1 via Stirling numbers of the second kind.
HExpansion h_coeffs_from_derivs(const std::vector<Rational>& derivs);

struct FiniteTypeInvariants {
  Rational v4, w4, v6;
};

// Finite-type combinations in their published form, including the unusual w4 constant.
FiniteTypeInvariants finite_type(const Rational& a2, const Rational& a4, const Rational& a6, const Rational& j4);
// p^2 (24 w4 - 5 v4) + 5 v4 + q^2 (210 v6 + 5 v4).
Rational ito_residual(long p, long q, const FiniteTypeInvariants& ft);

struct FourthDerivativeCheck {
  bool applicable = false;  // Conway polynomial trivial
  bool excludes = false;    // applicable and j4 != 0
  Rational j4;              // from the series
  Rational j4_from_derivs;  // (V'''' + 6 V''' + 7 V'') / 24, asserted equal to j4
};

// Throws std::logic_error if the two j4 computations disagree.
FourthDerivativeCheck fourth_derivative_gate(const HalfLaurent& v, const ConwaySeries& conway);

enum class Root5Verdict { Excludes, Inconclusive };
Root5Verdict root5_gate(const HalfLaurent& v);

enum class Gate { AlexanderLeading, D2, D3, ConwayTrivial, D4, Root5, None };
std::string gate_name(Gate g);

struct ObstructionVerdict {
  std::string instance;
  bool alexander_leading_nonzero = false;
  bool d2_nonzero = false;
  bool d3_nonzero = false;
  bool conway_nontrivial = false;
  bool d4_excludes = false;
  std::optional<bool> root5_excludes;  // present when the gate was requested
  Gate excluded_by = Gate::None;       // first excluding gate in proof order
  bool is_exception() const { return excluded_by == Gate::None; }
  std::string classification() const;
};

// Gates in proof order: leading Alexander coefficient, V''(1), V'''(1), Conway triviality,
// V''''(1) under trivial Conway, and optionally V at a fifth root of unity.
ObstructionVerdict cosmetic_gate(const HalfLaurent& jones, const std::vector<Rational>& derivs, const ConwaySeries& conway,
                                 const Integer& alexander_leading, bool use_root5 = false);

}  // namespace tk
