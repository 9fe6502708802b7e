#include <algorithm>
#include <set>

#include "doctest.h"
#include "twistknot/casework/report.hpp"
#include "twistknot/casework/sweep.hpp"

using namespace tk;

namespace {

const FamilyDefinition& def76() { return *builtin_family("7_6"); }

bool has_case(const std::vector<std::string>& v, const std::string& c) { return std::find(v.begin(), v.end(), c) != v.end(); }

}  // namespace

TEST_CASE("registry grammar") {
  const Registry reg = parse_registry(R"(
family 7_6
alexander_sign 1
case ++-++ --+--   # shared block
expect leading 0 : (ab - c(a+b-1))de
chain c = a b/(a + b - 1)
only --+--
expect d2 1 : -6 d (b^2 + b (e-1) + (a-1) e)/(a + b -1)
claim d2 1 negative
only
expect d2 0 : -6(ab - c(a+b+d-1)+ d(b+e))
)",
                                     def76());
  REQUIRE(reg.blocks.size() == 1);
  const auto& b = reg.blocks[0];
  CHECK(b.cases == std::vector<std::string>{"++-++", "--+--"});
  CHECK(b.chain.size() == 1);
  CHECK(b.chain[0].var == 2);
  CHECK(b.expects[1].only == "--+--");
  CHECK(b.claims[0].only == "--+--");
  CHECK(b.expects[2].only.empty());
  CHECK(reg.registered_cases().size() == 2);

  const auto plus = verify_paper_case(reg, "++-++");
  CHECK(plus.formulas.size() == 2);
  CHECK(plus.claims.empty());
  CHECK(plus.passed());
  const auto minus = verify_paper_case(reg, "--+--");
  CHECK(minus.formulas.size() == 3);
  REQUIRE(minus.claims.size() == 1);
  CHECK(minus.passed());
  CHECK_THROWS_AS(verify_paper_case(reg, "+++++"), std::invalid_argument);

  CHECK_THROWS_AS(parse_registry("family 10_58\n", def76()), std::invalid_argument);
  CHECK_THROWS_AS(parse_registry("case ++-++\nfrobnicate\n", def76()), std::invalid_argument);
  CHECK_THROWS_AS(parse_registry("case ++-++\nexpect d2 1 : a\n", def76()), std::invalid_argument);
  CHECK_THROWS_AS(parse_registry("case ++-++\nchain z = a\n", def76()), std::invalid_argument);
  CHECK_THROWS_AS(parse_registry("case ++-+\n", def76()), std::invalid_argument);
  CHECK_THROWS_AS(parse_registry("case ++-++\nonly +++++\n", def76()), std::invalid_argument);
  CHECK_THROWS_AS(parse_registry("expect d2 0 : a\n", def76()), std::invalid_argument);
}

TEST_CASE("a wrong formula fails and a correction is reported separately") {
  const Registry reg = parse_registry(R"(
case ++-++
expect leading 0 : (ab - c(a+b-1))d
expect leading 0 : (ab - c(a+b-1))d
correct : (ab - c(a+b-1))de
note : dropped factor e
)",
                                      def76());
  const auto v = verify_paper_case(reg, "++-++");
  REQUIRE(v.formulas.size() == 2);
  CHECK_FALSE(v.formulas[0].pass);
  CHECK(v.formulas[1].pass);
  CHECK(v.formulas[1].corrected);
  CHECK_FALSE(v.formulas[1].verbatim_pass);
  CHECK(v.formulas[1].note == "dropped factor e");
  CHECK_FALSE(v.passed());
}

TEST_CASE("sign claims use a certificate when one exists") {
  const Registry reg = parse_registry(R"(
case +++++
claim leading 0 positive
case ++-++
chain c = a b/(a + b - 1)
claim d2 1 negative
claim d2 1 positive
)",
                                      def76());
  const auto a = verify_paper_case(reg, "+++++");
  REQUIRE(a.claims.size() == 1);
  CHECK(a.claims[0].method == "sampled");
  CHECK(a.claims[0].pass);
  const auto b = verify_paper_case(reg, "++-++", 3);
  REQUIRE(b.claims.size() == 2);
  CHECK(b.claims[0].pass);
  CHECK_FALSE(b.claims[1].pass);
  CHECK(b.claims[0].samples == 81);  // a, b, d, e free over [1..3]

  const auto reg1058 = builtin_registry("10_58");
  const auto c = verify_paper_case(*reg1058, "+++++");
  REQUIRE(c.claims.size() == 1);
  CHECK(c.claims[0].method == "certificate");
}

TEST_CASE("chains substitute in order") {
  const VarNames names{"a", "b", "c", "d", "e"};
  const std::vector<ChainStep> chain{{2, "", parse_expression("a b/(a+b-1)", names)}, {4, "", parse_expression("b(b-1)/(a+b-1)", names)}};
  const RatFunc v = parse_expression("c + e", names);
  CHECK(apply_chain(v, chain, 0) == v);
  CHECK(apply_chain(v, chain, 1) == parse_expression("a b/(a+b-1) + e", names));
  CHECK(apply_chain(v, chain, 2) == parse_expression("(ab + b^2 - b)/(a+b-1)", names));
}

TEST_CASE("built-in registries match the engine") {
  for (const auto& fam : builtin_family_names()) {
    const auto reg = builtin_registry(fam);
    const auto cases = reg->registered_cases();
    CHECK(cases.size() == std::size_t{1} << builtin_family(fam)->bands());
    for (const auto& v : verify_registry(*reg)) {
      INFO(fam << " " << v.sign_case);
      CHECK(v.passed());
    }
  }
}

TEST_CASE("exception table") {
  const auto table = builtin_exception_table("7_6");
  REQUIRE(table->rows.size() == 16);
  CHECK(table->cases().size() == 12);
  const auto& row1 = table->rows[0];
  CHECK(row1.sign_case == "++-+-");
  auto m = row1.match({1, 3, 1, 2, 2});
  REQUIRE(m.has_value());
  CHECK(*m == std::vector<long>{2, 2});  // d, e
  CHECK_FALSE(row1.match({1, 3, 1, 2, 1}).has_value());
  CHECK_FALSE(row1.match({2, 3, 1, 2, 2}).has_value());
  CHECK_FALSE(row1.match({1, 1, 1, 2, 0}).has_value());

  // (1,1,1,d,1) lies in both +--++ patterns.
  int hits = 0;
  for (const auto* r : table->rows_for("+--++")) hits += r->match({1, 1, 1, 3, 1}) ? 1 : 0;
  CHECK(hits == 2);

  CHECK_THROWS_AS(parse_exception_table("++-+- | (1,e+1,-1,d,-e) | 1, e+1, -1, d, e\n", def76()), std::invalid_argument);
  CHECK_THROWS_AS(parse_exception_table("++-+- | (1,e+1,-1,d,-e) | 1, e+1, 1, d\n", def76()), std::invalid_argument);
  CHECK_THROWS_AS(parse_exception_table("++-+- | (1,e+1,-1,d^2,-e) | 1, e+1, 1, d^2, e\n", def76()), std::invalid_argument);
  CHECK(builtin_exception_table("10_58")->rows.empty());
}

TEST_CASE("twist box") {
  const auto box = twist_box(3, 2);
  REQUIRE(box.size() == 8);
  CHECK(box.front() == TwistVector{1, 1, 1});
  CHECK(box[1] == TwistVector{1, 1, 2});
  CHECK(box.back() == TwistVector{2, 2, 2});
  CHECK(twist_box(5, 4).size() == 1024);
}

TEST_CASE("single instances") {
  PropertyTally tally;
  const CaseContext ctx("7_6", "++-+-");
  const auto r = evaluate_instance(ctx, {1, 2, 1, 1, 1}, true, true, tally);
  CHECK(r.error.empty());
  CHECK(r.verdict.is_exception());
  CHECK(r.jones_is_one);
  CHECK(r.conway_is_one);
  CHECK(r.root5_inconclusive);
  CHECK(r.failed_properties.empty());
  CHECK(tally.all_hold());
  CHECK(tally.counts.at("skein per band")[0] == 5);

  const auto x = evaluate_instance(ctx, {2, 2, 1, 1, 1}, false, true, tally);
  CHECK(x.verdict.excluded_by == Gate::AlexanderLeading);
  CHECK(x.verdict.classification() == "EXCLUDED(alexander_leading)");
}

TEST_CASE("sweeps are deterministic and the parallel loop matches the serial one") {
  SweepConfig cfg;
  cfg.family = "7_6";
  cfg.range = 2;
  cfg.cases = {"++-+-", "--+-+", "+++++"};
  cfg.crossing_budget = 12;
  const auto par = summarize(cfg, sweep(cfg));
  cfg.parallel = false;
  const auto ser = summarize(cfg, sweep(cfg));
  const std::string a = to_json(par).dump(), b = to_json(ser).dump();
  CHECK(a == b);
  cfg.parallel = true;
  cfg.workers = 2;
  CHECK(to_json(summarize(cfg, sweep(cfg))).dump() == a);

  REQUIRE(par.reports.size() == 3);
  for (const auto& r : par.reports) CHECK(r.consistent());
  CHECK(par.reports[2].histogram.at("alexander_leading") == 32);
  // Range 2 reaches e = 1 only: (1,2,1,d,1) for d in {1,2}.
  CHECK(par.reports[0].exceptions.size() == 2);
  CHECK(par.mirror_mismatches.empty());
  CHECK(par.exceptions.all_matched());
  CHECK(has_case(par.exceptions.cases_with_exceptions, "++-+-"));
  CHECK(par.passed());
  CHECK(par.reports[0].properties.counts.count("oracle agreement") == 1);

  const auto j = to_json(par);
  for (const char* key : {"family", "range", "cases", "exception_table", "mirror_mismatches", "properties", "summary"}) CHECK(j.contains(key));
  CHECK(j["summary"]["passed"].get<bool>());
  CHECK(format_text(par).find("PASS") != std::string::npos);
}

TEST_CASE("unmatched exceptions are reported") {
  CaseReport fake;
  fake.family = "7_6";
  fake.sign_case = "+++++";
  fake.instances = 1;
  InstanceResult r;
  r.twists = {1, 1, 1, 1, 1};
  fake.exceptions.push_back(r);
  const auto cls = classify_exceptions({fake}, *builtin_exception_table("7_6"));
  CHECK_FALSE(cls.all_matched());
  CHECK(cls.records.size() == 16);
  for (const auto& rec : cls.records) CHECK_FALSE(rec.confirmed());
}

TEST_CASE("fourth-derivative witnesses") {
  const auto reg = builtin_registry("10_58");
  const auto w = find_d4_witnesses(*reg, "++-+-", 6, 1);
  REQUIRE(w.size() == 1);
  CHECK(w[0].twists == TwistVector{2, 12, 3, 2, 1});
  CHECK(w[0].verdict.excluded_by == Gate::D4);
  CHECK_FALSE(w[0].verdict.alexander_leading_nonzero);
  CHECK_FALSE(w[0].verdict.d2_nonzero);
  CHECK_FALSE(w[0].verdict.d3_nonzero);
  CHECK_FALSE(w[0].verdict.conway_nontrivial);
  CHECK_THROWS_AS(find_d4_witnesses(*reg, "+++++"), std::invalid_argument);
}

TEST_CASE("oracle sampling") {
  const auto s = crosscheck_family("8_12", 6, 14);
  REQUIRE(s.size() == 6);
  std::set<std::string> cases;
  for (const auto& x : s) {
    CHECK(x.agree);
    CHECK(x.crossings <= 14);
    cases.insert(x.sign_case);
  }
  CHECK(cases.size() == 6);
}
