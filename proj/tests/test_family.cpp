#include <random>

#include "doctest.h"
#include "twistknot/family/engine.hpp"

using namespace tk;

namespace {

HalfLaurent P(const char* s) { return HalfLaurent::parse(s); }
const VarNames kN{"n"};
MultiPoly N(const char* s) { return parse_polynomial(s, kN); }

FamilySpec family(const std::string& name, const std::string& signs) { return {builtin_family(name), parse_signs(signs)}; }

TwistVector random_twists(std::mt19937& rng, int k, int hi) {
  std::uniform_int_distribution<long> d(1, hi);
  TwistVector n;
  for (int i = 0; i < k; ++i) n.push_back(d(rng));
  return n;
}

}  // namespace

TEST_CASE("prefactor values") {
  CHECK(prefactor(1, 1, 3) == P("t^6"));
  // The geometric-sum formula at n = 1 is t (t^(1/2) - t^(-1/2)).
  CHECK(prefactor(1, 0, 1) == P("t^(3/2) - t^(1/2)"));
  CHECK(prefactor(-1, 0, 1) == P("t^(-3/2) - t^(-1/2)"));
  for (int s : {1, -1})
    for (long n = 1; n <= 6; ++n) {
      HalfLaurent geo;
      for (long j = 0; j < n; ++j) geo += HalfLaurent::t_power(static_cast<int>(4 * s * j));
      HalfLaurent expect = geo * HalfLaurent::monomial(s, 2 * s) * HalfLaurent::skein_z();
      CHECK(prefactor(s, 0, n) == expect);
    }
}

TEST_CASE("prefactor derivative table") {
  CHECK(prefactor_deriv_poly(1, 0, 1) == N("n"));
  CHECK(prefactor_deriv_poly(-1, 1, 2) == N("2n(2n+1)"));
  CHECK(prefactor_deriv_poly(1, 0, 4) == N("(n/2)(-3 + 38n - 48n^2 + 16n^3)"));
  for (int s : {1, -1})
    for (int x : {0, 1})
      for (int k = 0; k <= 6; ++k)
        for (long n = 1; n <= 5; ++n)
          CHECK(prefactor_deriv_poly(s, x, k).eval(std::map<int, Rational>{{0, Rational(n)}}) ==
                prefactor(s, x, n).derivs_at_one(k)[k]);
}

TEST_CASE("X_n values") {
  CHECK(xn_jones({}) == P("-t^(1/2) - t^(-1/2)"));
  CHECK(xn_jones({1}) == P("1"));
  CHECK(xn_jones({1, 1}) == P("-t^(5/2) - t^(1/2)"));
  CHECK(xn_jones({1, 0, -1}) == xn_jones({}));
  CHECK(xn_jones({-1, -1}) == xn_jones({1, 1}).mirrored());
  CHECK(xn_jones({1, -1, 1, 1}) == xn_jones({1, 1}));
}

TEST_CASE("7_6 base cases") {
  auto f = family("7_6", "+++++");
  // Bits are bands 1..5 from the low end.
  CHECK(f.base_case(0b00111) == xn_jones({-1, -1, -1}));
  CHECK(f.base_case(0b10100) == HalfLaurent::unknot_factor());
  CHECK(f.base_case(0b01000) == HalfLaurent::unknot_factor().pow(2));
}

TEST_CASE("10_58 base cases") {
  auto f = family("10_58", "+++++");
  CHECK(f.base_case(0) == HalfLaurent::unknot_factor());
  CHECK(f.base_case(0b11111) == P("1"));
  // (x5, x1, x4) = (1, 0, 1) with x2 = 1, x3 = 0.
  CHECK(f.base_case(0b11010) == P("1"));
}

TEST_CASE("assembled Jones polynomials") {
  CHECK(family("7_6", "++-+-").assemble_jones({1, 2, 1, 1, 1}) == P("1"));
  std::mt19937 rng(5);
  for (const auto& name : builtin_family_names()) {
    const int k = builtin_family(name)->bands();
    for (const auto& signs : all_sign_cases(k)) {
      FamilySpec f(builtin_family(name), signs);
      for (int trial = 0; trial < 3; ++trial) {
        TwistVector n = random_twists(rng, k, 4);
        HalfLaurent v = f.assemble_jones(n);
        CHECK(v == f.assemble_jones_expanded(n));
        CHECK(v.is_knot_valued());
        auto d = f.jones_derivs(n, 4);
        CHECK(d[0] == 1);
        CHECK(d[1] == 0);
        CHECK(f.mirrored().assemble_jones(n) == v.mirrored());
        // Skein recursion in each band.
        for (int band = 0; band < k; ++band) {
          TwistVector up = n;
          ++up[band];
          const int s = f.bands()[band].sign;
          HalfLaurent lhs = f.assemble_jones(up) - v.shifted(4 * s);
          HalfLaurent rhs = Integer(s) * (f.resolved_partial(up, band) * HalfLaurent::skein_z()).shifted(2 * s);
          CHECK(lhs == rhs);
        }
      }
    }
  }
}

TEST_CASE("symbolic derivatives") {
  const VarNames v{"a", "b", "c", "d", "e"};
  auto f = family("7_6", "++-++");
  auto sym = f.symbolic_derivs(4);
  CHECK(sym[1].is_zero());
  CHECK(sym[0] == MultiPoly::constant(1));
  CHECK(sym[2] == parse_polynomial("-6(ab - c(a+b+d-1) + d(b+e))", v));
  CHECK(family("7_6", "+--++").symbolic_derivs(2)[2] == parse_polynomial("6(-bc + a(b+c-1) + d(b+c-e-1))", v));
  CHECK(f.jones_derivs({1, 1, 1, 1, 1})[2] == -6);
  std::mt19937 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    TwistVector n = random_twists(rng, 5, 5);
    std::vector<Rational> pt(n.begin(), n.end());
    auto d = f.jones_derivs(n, 4);
    for (int k = 0; k <= 4; ++k) CHECK(sym[k].eval(pt) == d[k]);
  }
}
