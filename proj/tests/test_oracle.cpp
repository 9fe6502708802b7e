#include <random>

#include "doctest.h"
#include "twistknot/oracle/pd.hpp"

using namespace tk;

namespace {
HalfLaurent P(const char* s) { return HalfLaurent::parse(s); }
HalfLaurent A(int e) { return HalfLaurent::monomial(1, e); }
const char* kTrefoil = "X 5 2 0 3\nX 3 0 4 1\nX 1 4 2 5\n";
const char* kHopf = "X 2 1 3 0\nX 0 3 1 2\norient 0 b\norient 1 b\n";
}  // namespace

TEST_CASE("bracket fixtures") {
  CHECK(kauffman_bracket(PDCode{}).poly == P("1"));
  PDCode kink = parse_pd("X 0 0 1 1\norient 0 b\n");
  CHECK(kauffman_bracket(kink).poly == -A(3));
  CHECK(kauffman_bracket(parse_pd(kHopf)).poly == -A(4) - A(-4));
}

TEST_CASE("Jones from PD") {
  CHECK(jones_from_pd(parse_pd(kTrefoil)) == P("-t^(-4) + t^(-3) + t^(-1)"));
  // The strand leaving a kink through c re-enters at d for (0,0,1,1) and at b for (0,1,1,0).
  CHECK(jones_from_pd(parse_pd("X 0 0 1 1\norient 0 d\n")) == P("1"));
  CHECK(jones_from_pd(parse_pd("X 0 1 1 0\norient 0 b\n")) == P("1"));
  for (const auto& name : builtin_family_names()) {
    auto v = jones_from_pd(builtin_template(name).base);
    auto d = v.derivs_at_one(1);
    CHECK(d[0] == 1);
    CHECK(d[1] == 0);
  }
}

TEST_CASE("serial and parallel state sums agree") {
  for (const auto& name : builtin_family_names()) {
    auto pd = builtin_template(name).base;
    auto s = kauffman_bracket_serial(pd), p = kauffman_bracket(pd);
    CHECK(s.poly == p.poly);
    CHECK(p.states == (std::uint64_t{1} << pd.size()));
  }
}

TEST_CASE("Reidemeister moves on a fixture") {
  // Switching one Hopf crossing gives a clasp that a second move pulls apart into two circles.
  PDCode r2 = parse_pd("X 1 3 0 2\nX 0 3 1 2\norient 0 d\norient 1 b\n");
  CHECK(kauffman_bracket(r2).poly == -A(2) - A(-2));
  CHECK(jones_from_pd(r2) == HalfLaurent::unknot_factor());
  // The table trefoil after a random sequence of Reidemeister moves, 12 crossings.
  PDCode moved = parse_pd(
      "X 1 4 2 5\nX 3 0 4 1\nX 23 2 0 3\nX 7 17 8 16\nX 20 13 21 14\nX 17 9 18 8\n"
      "X 14 21 15 22\nX 15 23 16 22\nX 10 19 11 20\nX 9 19 10 18\nX 5 7 6 6\nX 12 12 13 11\n");
  CHECK(jones_from_pd(moved) == jones_from_pd(parse_pd(kTrefoil)));
}

TEST_CASE("twist expansion") {
  for (const auto& name : builtin_family_names()) {
    auto tpl = builtin_template(name);
    const int k = static_cast<int>(tpl.bands.size());
    TwistVector ones(static_cast<std::size_t>(k), 1);
    auto base = expand_twists(tpl, tpl.base_signs(), ones);
    CHECK(jones_from_pd(base) == jones_from_pd(tpl.base));
    CHECK(base.size() == tpl.base.size());
    for (int i = 0; i < k; ++i) {
      TwistVector up = ones;
      ++up[i];
      CHECK(expand_twists(tpl, tpl.base_signs(), up).size() == tpl.base.size() + 2);
    }
  }
}

TEST_CASE("oracle agrees with the family engine") {
  std::mt19937 rng(17);
  for (const auto& name : builtin_family_names()) {
    auto tpl = builtin_template(name);
    const int k = static_cast<int>(tpl.bands.size());
    for (const auto& signs : all_sign_cases(k)) {
      FamilySpec f(builtin_family(name), signs);
      TwistVector n(static_cast<std::size_t>(k), 1);
      if (rng() % 2) n[rng() % k] = 2;
      CHECK(crosscheck(f, tpl, n, 14));
    }
  }
  FamilySpec f76(builtin_family("7_6"), parse_signs("+++++"));
  CHECK(crosscheck(f76, builtin_template("7_6"), {2, 1, 1, 1, 1}));
  CHECK_THROWS_AS(crosscheck(f76, builtin_template("7_6"), {9, 1, 1, 1, 1}, 12), std::length_error);
}

TEST_CASE("corrupted template is caught") {
  auto tpl = builtin_template("7_6");
  std::swap(tpl.bands[0].crossings, tpl.bands[3].crossings);
  std::swap(tpl.bands[0].parity, tpl.bands[3].parity);
  FamilySpec f(builtin_family("7_6"), parse_signs("+-+-+"));
  CHECK_FALSE(crosscheck(f, tpl, {2, 1, 1, 1, 1}));
}
