#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "helpers.hpp"
#include "pct/error.hpp"
#include "pct/logic.hpp"
#include "pct/rng.hpp"

namespace pct {
namespace {

Interpretation facts_of(const std::string& text) {
  std::vector<GroundFact> facts;
  for (const Literal& l : parse_conjunction(text)) {
    GroundFact f{l.functor, {}};
    for (const Term& t : l.args) f.args.push_back(std::get<Constant>(t));
    facts.push_back(std::move(f));
  }
  return Interpretation(std::move(facts));
}

TEST(MatchQuery, BindsAtomFact) {
  const Interpretation e = facts_of("atom(d189_1,c,22,-0.11)");
  const auto b = match_query(parse_conjunction("atom(A,c,22,C)"), e);
  ASSERT_TRUE(b);
  EXPECT_EQ(b->at("A"), Constant::identifier("d189_1"));
  EXPECT_EQ(b->at("C"), Constant::numeric(-0.11));
}

TEST(MatchQuery, EmptyConjunctionKeepsSeed) {
  const Binding seed{{"X", Constant::identifier("a")}};
  const auto b = match_query({}, Interpretation{}, seed);
  ASSERT_TRUE(b);
  EXPECT_EQ(*b, seed);
}

TEST(MatchQuery, ChainNeedsTwoBonds) {
  const auto q = parse_conjunction("bond(X,Y,7), bond(Y,Z,7)");
  EXPECT_FALSE(match_query(q, facts_of("bond(a,b,7)")));
  const auto b = match_query(q, facts_of("bond(a,b,7), bond(b,c,7)"));
  ASSERT_TRUE(b);
  EXPECT_EQ(b->at("X"), Constant::identifier("a"));
  EXPECT_EQ(b->at("Y"), Constant::identifier("b"));
  EXPECT_EQ(b->at("Z"), Constant::identifier("c"));
}

TEST(MatchQuery, NumbersCompareByValue) {
  EXPECT_TRUE(match_query(parse_conjunction("p(1.0)"), facts_of("p(1)")));
}

std::string random_term(Rng& rng, bool allow_variable) {
  static const char* constants[] = {"a", "b", "c", "1"};
  static const char* variables[] = {"X", "Y", "Z"};
  if (allow_variable && rng.uniform01() < 0.6) return variables[rng.uniform_index(3)];
  return constants[rng.uniform_index(4)];
}

std::string random_atom(Rng& rng, bool allow_variables) {
  const std::string functor = rng.uniform01() < 0.5 ? "p" : "q";
  return functor + "(" + random_term(rng, allow_variables) + "," + random_term(rng, allow_variables) + ")";
}

TEST(MatchQuery, MonotoneUnderFactAddition) {
  Rng rng(42);
  int successes = 0;
  for (int trial = 0; trial < 500; ++trial) {
    std::string query;
    const std::size_t literals = 1 + rng.uniform_index(3);
    for (std::size_t i = 0; i < literals; ++i) query += (i ? ", " : "") + random_atom(rng, true);
    std::string base;
    const std::size_t n = 1 + rng.uniform_index(5);
    for (std::size_t i = 0; i < n; ++i) base += (i ? ", " : "") + random_atom(rng, false);
    std::string extended = base;
    const std::size_t extra = 1 + rng.uniform_index(4);
    for (std::size_t i = 0; i < extra; ++i) extended += ", " + random_atom(rng, false);
    const auto q = parse_conjunction(query);
    const bool before = match_query(q, facts_of(base)).has_value();
    const bool after = match_query(q, facts_of(extended)).has_value();
    if (before) {
      ++successes;
      EXPECT_TRUE(after) << query << " on " << extended;
    }
  }
  EXPECT_GT(successes, 50);
}

TEST(TemplateSpec, ParsesTypedSlots) {
  const TemplateSet t = parse_template_spec("test atom(+mol, #type, #charge)\n");
  ASSERT_EQ(t.size(), 1u);
  ASSERT_EQ(t.templates[0].slots.size(), 3u);
  EXPECT_EQ(t.templates[0].slots[0].rule, SlotRule::bound_variable);
  EXPECT_EQ(t.templates[0].slots[0].type, "mol");
  EXPECT_EQ(t.templates[0].slots[2].rule, SlotRule::constant);
  EXPECT_EQ(t.templates[0].slots[2].type, "charge");
}

TEST(TemplateSpec, EmptyAndDuplicate) {
  EXPECT_TRUE(parse_template_spec("").empty());
  EXPECT_TRUE(parse_template_spec("% only a comment\n").empty());
  try {
    parse_template_spec("test p(+a)\ntest p(+a)\n");
    FAIL() << "duplicate accepted";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("duplicate template"), std::string::npos);
  }
}

TEST(Candidates, MidpointThresholds) {
  const Dataset ds = testing::numeric_dataset({{0}, {2}, {8}, {10}}, 1);
  const auto c = generate_candidates({}, {}, ds, ds.ids());
  ASSERT_EQ(c.size(), 3u);
  EXPECT_DOUBLE_EQ(c[0].attribute_test().value, 1.0);
  EXPECT_DOUBLE_EQ(c[1].attribute_test().value, 5.0);
  EXPECT_DOUBLE_EQ(c[2].attribute_test().value, 9.0);
}

TEST(Candidates, ConstantAttributeGivesNothing) {
  const Dataset ds = testing::numeric_dataset({{3}, {3}, {3}}, 1);
  EXPECT_TRUE(generate_candidates({}, {}, ds, ds.ids()).empty());
}

TEST(Candidates, TemplateConstantsFromData) {
  const Dataset ds = parse_interpretations(
      "begin(model(m1)).\natom(m1,c).\nend(model(m1)).\n"
      "begin(model(m2)).\natom(m2,n).\natom(m2,c).\nend(model(m2)).\n");
  const TemplateSet t = parse_template_spec("test atom(+mol, #type)\n");
  const auto c = generate_candidates({}, t, ds, ds.ids(), CandidateOptions{1});
  ASSERT_EQ(c.size(), 2u);
  std::vector<std::string> constants;
  for (const TestQuery& q : c) {
    ASSERT_FALSE(q.is_attribute_test());
    const auto& lits = q.conjunctive_test().literals;
    ASSERT_EQ(lits.size(), 1u);
    EXPECT_EQ(lits[0].functor, "atom");
    EXPECT_TRUE(std::holds_alternative<Variable>(lits[0].args[0]));
    constants.push_back(std::get<Constant>(lits[0].args[1]).text);
  }
  EXPECT_EQ(constants, (std::vector<std::string>{"c", "n"}));
}

TEST(Candidates, SecondLiteralConsumesNewVariable) {
  const Dataset ds = parse_interpretations(
      "begin(model(m1)).\natom(m1,c).\nend(model(m1)).\n"
      "begin(model(m2)).\natom(m2,n).\natom(m2,c).\nend(model(m2)).\n");
  const TemplateSet t = parse_template_spec("test atom(+mol, #type)\n");
  const auto c = generate_candidates({}, t, ds, ds.ids());
  ASSERT_EQ(c.size(), 4u);
  for (std::size_t i = 2; i < 4; ++i) {
    const auto& lits = c[i].conjunctive_test().literals;
    ASSERT_EQ(lits.size(), 2u);
    EXPECT_EQ(lits[0].args[0], lits[1].args[0]);
  }
}

TEST(Candidates, TargetsAreNeverTested) {
  const Dataset base = testing::numeric_dataset({{0, 1}, {2, 5}, {8, 9}}, 2);
  const std::vector<std::string> names{"a1"};
  const Dataset ds = with_targets(base, names);
  for (const TestQuery& q : generate_candidates({}, {}, ds, ds.ids())) {
    EXPECT_EQ(q.attribute_test().attribute, 0u);
  }
}

TEST(TestQuery, MissingCellsFailAttributeTests) {
  const Dataset ds = testing::numeric_dataset({{kMissing}}, 1);
  EXPECT_FALSE(TestQuery(AttributeTest{0, Comparator::less_equal, 5.0}).passes(ds[0]));
  EXPECT_FALSE(TestQuery(AttributeTest{0, Comparator::equal, 0.0}).passes(ds[0]));
}

TEST(TestQuery, PathLiteralsShareVariables) {
  Example e;
  e.facts = std::make_shared<Interpretation>(facts_of("atom(a1,c), atom(a2,n), charge(a2,1)"));
  const TestQuery test(ConjunctiveTest{parse_conjunction("charge(A,1)")});
  EXPECT_TRUE(test.passes(e));
  const auto path_c = parse_conjunction("atom(A,c)");
  const auto path_n = parse_conjunction("atom(A,n)");
  EXPECT_FALSE(test.passes(e, path_c));
  EXPECT_TRUE(test.passes(e, path_n));
}

}  // namespace
}  // namespace pct
