#include <random>

#include "doctest.h"
#include "twistknot/algebra/cyclo5.hpp"
#include "twistknot/algebra/half_laurent.hpp"
#include "twistknot/algebra/multi_poly.hpp"

using namespace tk;

namespace {

HalfLaurent P(const char* s) { return HalfLaurent::parse(s); }

HalfLaurent random_laurent(std::mt19937& rng, bool knot_valued) {
  std::uniform_int_distribution<int> coeff(-3, 3), expo(-6, 6), count(0, 5);
  HalfLaurent p;
  for (int i = count(rng); i > 0; --i) {
    int e = expo(rng);
    if (knot_valued) e *= 2;
    p += HalfLaurent::monomial(coeff(rng), e);
  }
  return p;
}

MultiPoly random_multi(std::mt19937& rng) {
  std::uniform_int_distribution<int> coeff(-4, 4), var(0, 3), count(0, 4), deg(0, 2);
  MultiPoly p;
  for (int i = count(rng); i > 0; --i) {
    MultiPoly m = MultiPoly::constant(make_rational(coeff(rng), 1 + deg(rng)));
    for (int j = deg(rng); j > 0; --j) m *= MultiPoly::variable(var(rng));
    p += m;
  }
  return p;
}

}  // namespace

TEST_CASE("HalfLaurent products") {
  CHECK((P("t^(1/2) - t^(-1/2)") * P("t^(1/2) + t^(-1/2)")) == P("t - t^(-1)"));
  CHECK((P("1") * P("-t^(5/2) - t^(1/2)")) == P("-t^(5/2) - t^(1/2)"));
  CHECK((P("1 + t^2") * P("1 + t^2")).to_string() == "t^4 + 2t^2 + 1");
}

TEST_CASE("HalfLaurent text round trip") {
  for (const char* s : {"-t^(5/2) - t^(1/2)", "t^2 - 1 + t^(-1)", "0", "3t - 2t^(-3/2)", "t^(-1/2)"})
    CHECK(P(s).to_string() == s);
  CHECK_THROWS_AS(P("t^(1/3)"), std::invalid_argument);
  CHECK_THROWS_AS(P("2 x"), std::invalid_argument);
}

TEST_CASE("derivatives at one") {
  auto d = P("t^2").derivs_at_one(4);
  CHECK(d == std::vector<Rational>{1, 2, 2, 0, 0});
  CHECK(P("t^(1/2)").derivs_at_one(1)[1] == make_rational(1, 2));
  CHECK(HalfLaurent::unknot_factor().derivs_at_one(0)[0] == -2);
}

TEST_CASE("mirror") {
  CHECK(P("t - t^(-1)").mirrored() == P("t^(-1) - t"));
  CHECK(P("1").mirrored() == P("1"));
}

TEST_CASE("geometric multiplication matches explicit sums") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    HalfLaurent p = random_laurent(rng, false);
    for (int step : {-4, -2, 1, 4})
      for (int n : {1, 2, 5}) {
        HalfLaurent g;
        for (int j = 0; j < n; ++j) g += HalfLaurent::t_power(j * step);
        CHECK(p.geometric_mul(step, n) == p * g);
      }
  }
}

TEST_CASE("root of unity evaluation") {
  CHECK(P("1").eval_root5().is_one());
  CHECK(P("t^5").eval_root5().is_one());
  CHECK(P("t^4").eval_root5() == Cyclo5({-1, -1, -1, -1}));
  CHECK_THROWS_AS(P("t^(1/2)").eval_root5(), std::domain_error);
}

TEST_CASE("HalfLaurent ring properties") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    HalfLaurent a = random_laurent(rng, trial % 2), b = random_laurent(rng, trial % 2), c = random_laurent(rng, trial % 2);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b).mirrored() == a.mirrored() * b.mirrored());
    auto da = a.derivs_at_one(4), db = b.derivs_at_one(4), ds = (a + b).derivs_at_one(4);
    for (int k = 0; k <= 4; ++k) CHECK(ds[k] == da[k] + db[k]);
    HalfLaurent ka = random_laurent(rng, true), kb = random_laurent(rng, true);
    CHECK((ka * kb).eval_root5() == ka.eval_root5() * kb.eval_root5());
  }
}

TEST_CASE("MultiPoly evaluation") {
  const VarNames v{"a", "b", "c", "d", "e"};
  CHECK(parse_polynomial("a*b - c", v).eval(std::map<int, Rational>{{0, 2}, {1, 3}, {2, 1}}) == 5);
  CHECK(MultiPoly().eval(std::map<int, Rational>{}) == 0);
  auto p = parse_polynomial("-6(ab - c(a+b+d-1) + d(b+e))", v);
  CHECK(p.eval(std::vector<Rational>(5, 1)) == -6);
  CHECK_THROWS_AS(p.eval(std::map<int, Rational>{{0, 1}}), std::out_of_range);
}

TEST_CASE("MultiPoly ring properties") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    MultiPoly a = random_multi(rng), b = random_multi(rng), c = random_multi(rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == MultiPoly());
  }
}

TEST_CASE("parser and rational substitution") {
  const VarNames v{"a", "b", "c", "d", "e"};
  CHECK(parse_polynomial("2 a b", v) == parse_polynomial("2*a*b", v));
  CHECK(parse_polynomial("ab", v) == parse_polynomial("a*b", v));
  CHECK(parse_polynomial("\xE2\x88\x92" "a", v) == -MultiPoly::variable(0));
  CHECK(parse_polynomial("(a+1)^2", v) == parse_polynomial("a^2 + 2a + 1", v));
  // c = ab/(a+b-1) kills the leading term ab - c(a+b-1).
  RatFunc lead = parse_expression("ab - c(a+b-1)", v);
  RatFunc chain = parse_expression("a b/(a + b - 1)", v);
  CHECK(lead.substitute(2, chain).num().is_zero());
  RatFunc d2 = parse_expression("-6(ab - c(a+b+d-1)+ d(b+e))", v);
  CHECK(d2.substitute(2, chain) == parse_expression("-6 d (b^2 + b (e-1) + (a-1) e)/(a + b -1)", v));
  CHECK_THROWS_AS(parse_expression("a + ", v), std::invalid_argument);
  CHECK_THROWS_AS(parse_expression("xyz", v), std::invalid_argument);
}
