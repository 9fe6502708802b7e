#include <random>

#include "doctest.h"
#include "twistknot/seifert/seifert.hpp"

using namespace tk;

namespace {
const VarNames kV{"a", "b", "c", "d", "e"};
MultiPoly M(const char* s) { return parse_polynomial(s, kV); }
}  // namespace

TEST_CASE("templates") {
  auto t76 = template_7_6(parse_signs("+++++"));
  CHECK(t76.at(0, 0) == M("-a - b + 1"));
  CHECK(t76.at(1, 0) == M("-a + 1"));
  for (const auto& s : all_sign_cases(5)) CHECK(template_7_6(s).at(2, 3) == M("1"));
  auto t1058 = template_10_58(parse_signs("+++++"));
  CHECK(t1058.at(0, 1) == M("a"));
  CHECK(t1058.at(2, 3) == M("0"));
  CHECK(template_8_12(parse_signs("++++")).at(0, 0) == M("-a"));
  for (const auto& e : t76.entries) CHECK(e.total_degree() <= 1);
}

TEST_CASE("leading coefficients") {
  CHECK(leading_coeff_symbolic(template_7_6(parse_signs("+++++"))) == M("((b-1)(c-1) + a(b+c-1)) d e"));
  // Generic signs for 10_58: substitute signed twist counts by hand.
  for (const auto& s : all_sign_cases(5)) {
    auto lead = leading_coeff_symbolic(template_10_58(s));
    const Rational s1 = s[0], s2 = s[1], s3 = s[2], s4 = s[3], s5 = s[4];
    MultiPoly n1 = s1 * M("a"), n2 = s2 * M("b"), n3 = s3 * M("c"), n4 = s4 * M("d"), n5 = s5 * M("e");
    CHECK(lead == n2 * n3 * (n1 * n4 + (n4 + n1) * n5));
  }
  for (const auto& s : all_sign_cases(4)) {
    auto lead = leading_coeff_symbolic(template_8_12(s));
    REQUIRE(lead.terms().size() == 1);
    CHECK(abs(lead.terms().begin()->second) == 1);
    CHECK(lead.total_degree() == 4);
  }
}

TEST_CASE("Alexander and Conway at instances") {
  std::mt19937 rng(1);
  std::uniform_int_distribution<long> d(1, 4);
  for (const auto& name : builtin_family_names()) {
    const int k = builtin_family(name)->bands();
    for (const auto& s : all_sign_cases(k)) {
      auto tpl = make_template(*builtin_family(name), s);
      auto lead = leading_coeff_symbolic(tpl);
      auto second = second_coeff_symbolic(tpl);
      auto conway_sym = conway_symbolic(tpl);
      TwistVector n;
      for (int i = 0; i < k; ++i) n.push_back(d(rng));
      std::vector<Rational> pt(n.begin(), n.end());
      HalfLaurent delta = alexander_poly(tpl, n);
      CHECK(abs(delta.at_one()) == 1);
      CHECK(delta.mirrored().shifted(8) == delta);
      CHECK(Rational(delta.coefficient(8)) == lead.eval(pt));
      CHECK(Rational(delta.coefficient(6)) == second.eval(pt));
      ConwaySeries c = conway_poly(tpl, n);
      CHECK(c.a(0) == 1);
      for (int i = 0; i <= 2; ++i) CHECK(Rational(c.a(2 * i)) == conway_sym[i].eval(pt));
      CHECK(Rational(c.a(4)) == lead.eval(pt));
    }
  }
}

TEST_CASE("7_6 unknot instance has trivial invariants") {
  auto tpl = template_7_6(parse_signs("++-+-"));
  HalfLaurent delta = alexander_poly(tpl, {1, 2, 1, 1, 1});
  CHECK(delta.terms().size() == 1);
  CHECK(conway_poly(tpl, {1, 2, 1, 1, 1}).is_trivial());
}
