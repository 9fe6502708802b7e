#include "twistknot/obstruction/obstruction.hpp"

#include <stdexcept>

namespace tk {

HExpansion h_coeffs(const HalfLaurent& v, int order) {
  HExpansion out;
  out.j.assign(static_cast<std::size_t>(order + 1), Rational(0));
  for (const auto& [e, c] : v.terms()) {
    // e^{(e/2) h}: accumulate (e/2)^n / n! incrementally.
    const Rational rate(e, 2);
    Rational term = Rational(c);
    for (int n = 0; n <= order; ++n) {
      out.j[n] += term;
      term *= rate / (n + 1);
    }
  }
  for (auto& x : out.j) x.canonicalize();
  return out;
}

HExpansion h_coeffs_from_derivs(const std::vector<Rational>& derivs) {
  const int order = static_cast<int>(derivs.size()) - 1;
  // Stirling numbers of the second kind, S(n, k) = k S(n-1, k) + S(n-1, k-1).
  std::vector<std::vector<Integer>> stirling(static_cast<std::size_t>(order + 1), std::vector<Integer>(order + 1, 0));
  stirling[0][0] = 1;
  for (int n = 1; n <= order; ++n)
    for (int k = 1; k <= n; ++k) stirling[n][k] = k * stirling[n - 1][k] + stirling[n - 1][k - 1];
  HExpansion out;
  for (int n = 0; n <= order; ++n) {
    Rational s = 0;
    for (int k = 0; k <= n; ++k) s += derivs[k] * Rational(stirling[n][k]);
    s /= Rational(factorial(n));
    out.j.push_back(s);
  }
  return out;
}

FiniteTypeInvariants finite_type(const Rational& a2, const Rational& a4, const Rational& a6, const Rational& j4) {
  FiniteTypeInvariants ft;
  ft.v4 = Rational(-1, 2) * a4 - Rational(1, 24) * a2 + Rational(1, 4) * a2 * a2;
  ft.w4 = Rational(1, 96) * j4 + Rational(3, 32) * a4 - Rational(9, 2) * a2 * a2;
  ft.v6 = Rational(-1, 2) * a6 - Rational(1, 12) * a4 - Rational(1, 720) * a2 + Rational(1, 24) * a2 * a2 +
          Rational(1, 2) * a2 * a4 - Rational(1, 6) * a2 * a2 * a2;
  return ft;
}

Rational ito_residual(long p, long q, const FiniteTypeInvariants& ft) {
  const Rational p2(p * p), q2(q * q);
  return p2 * (24 * ft.w4 - 5 * ft.v4) + 5 * ft.v4 + q2 * (210 * ft.v6 + 5 * ft.v4);
}

FourthDerivativeCheck fourth_derivative_gate(const HalfLaurent& v, const ConwaySeries& conway) {
  FourthDerivativeCheck out;
  out.j4 = h_coeffs(v, 4).j[4];
  const auto d = v.derivs_at_one(4);
  out.j4_from_derivs = h_coeffs_from_derivs(d).j[4];
  if (out.j4 != out.j4_from_derivs) throw std::logic_error("j4 from series and from derivatives differ");
  out.applicable = conway.is_trivial();
  out.excludes = out.applicable && out.j4 != 0;
  return out;
}

Root5Verdict root5_gate(const HalfLaurent& v) {
  return v.eval_root5().is_one() ? Root5Verdict::Inconclusive : Root5Verdict::Excludes;
}

std::string gate_name(Gate g) {
  switch (g) {
    case Gate::AlexanderLeading: return "alexander_leading";
    case Gate::D2: return "d2";
    case Gate::D3: return "d3";
    case Gate::ConwayTrivial: return "conway_trivial";
    case Gate::D4: return "d4";
    case Gate::Root5: return "root5";
    case Gate::None: return "none";
  }
  return "none";
}

std::string ObstructionVerdict::classification() const {
  return is_exception() ? "EXCEPTION" : "EXCLUDED(" + gate_name(excluded_by) + ")";
}

ObstructionVerdict cosmetic_gate(const HalfLaurent& jones, const std::vector<Rational>& derivs, const ConwaySeries& conway,
                                 const Integer& alexander_leading, bool use_root5) {
  if (derivs.size() < 5) throw std::invalid_argument("cosmetic_gate needs derivatives through order 4");
  ObstructionVerdict v;
  v.alexander_leading_nonzero = alexander_leading != 0;
  v.d2_nonzero = derivs[2] != 0;
  v.d3_nonzero = derivs[3] != 0;
  v.conway_nontrivial = !conway.is_trivial();
  v.d4_excludes = fourth_derivative_gate(jones, conway).excludes;
  if (use_root5) v.root5_excludes = root5_gate(jones) == Root5Verdict::Excludes;
  const std::pair<bool, Gate> order[] = {{v.alexander_leading_nonzero, Gate::AlexanderLeading},
                                         {v.d2_nonzero, Gate::D2},
                                         {v.d3_nonzero, Gate::D3},
                                         {v.conway_nontrivial, Gate::ConwayTrivial},
                                         {v.d4_excludes, Gate::D4},
                                         {v.root5_excludes.value_or(false), Gate::Root5}};
  for (const auto& [hit, gate] : order)
    if (hit) {
      v.excluded_by = gate;
      break;
    }
  return v;
}

}  // namespace tk
