#include <gtest/gtest.h>

#include <string>

#include "pct/dataset.hpp"
#include "pct/error.hpp"

namespace pct {
namespace {

TEST(ParseCsv, InfersNumericAndNominalColumns) {
  const Dataset ds = parse_csv("a,b\n1,x\n");
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds.schema()[0].kind, AttributeKind::numeric);
  EXPECT_EQ(ds.schema()[1].kind, AttributeKind::nominal);
  EXPECT_DOUBLE_EQ(ds[0].values[0], 1.0);
  EXPECT_DOUBLE_EQ(ds[0].values[1], 0.0);
}

TEST(ParseCsv, QuestionMarkIsMissing) {
  const Dataset ds = parse_csv("a,b\n?,x\n2,?\n");
  EXPECT_TRUE(is_missing(ds[0].values[0]));
  EXPECT_TRUE(is_missing(ds[1].values[1]));
  EXPECT_EQ(ds.schema()[0].kind, AttributeKind::numeric);
}

TEST(ParseCsv, Iris) {
  const Dataset ds = parse_csv(read_file(PCT_DATA_DIR "/iris.csv"));
  ASSERT_EQ(ds.size(), 150u);
  ASSERT_EQ(ds.schema().size(), 5u);
  for (std::size_t a = 0; a < 4; ++a) EXPECT_EQ(ds.schema()[a].kind, AttributeKind::numeric);
  EXPECT_EQ(ds.schema()[4].kind, AttributeKind::nominal);
  EXPECT_EQ(ds.schema()[4].values.size(), 3u);
}

TEST(ParseCsv, RoundTrip) {
  const std::string text = "a,b,c\n1.5,x,?\n-2,y,3\n";
  const Dataset ds = parse_csv(text);
  const Dataset again = parse_csv(to_csv(ds));
  EXPECT_EQ(ds.schema(), again.schema());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t a = 0; a < 3; ++a) {
      const double x = ds[i].values[a];
      const double y = again[i].values[a];
      EXPECT_TRUE((is_missing(x) && is_missing(y)) || x == y);
    }
  }
}

TEST(ParseCsv, RaggedRowIsDataError) {
  EXPECT_THROW(parse_csv("a,b\n1\n"), DataError);
}

TEST(ParseInterpretations, LiftsMappedFacts) {
  const AttributeMapping mapping = parse_attribute_mapping("attribute lumo from lumo/1 numeric\n");
  const Dataset ds = parse_interpretations(
      "begin(model(d189)).\nlumo(-3.025).\natom(d189_1,c,22,-0.11).\nend(model(d189)).\n", mapping);
  ASSERT_EQ(ds.size(), 1u);
  const std::size_t lumo = ds.schema().require("lumo");
  EXPECT_DOUBLE_EQ(ds[0].values[lumo], -3.025);
  EXPECT_EQ(ds[0].facts->lookup("atom", 4).size(), 1u);
}

TEST(ParseInterpretations, EmptyBlockHasNoFactsAndMissingCells) {
  const AttributeMapping mapping = parse_attribute_mapping("attribute lumo from lumo/1 numeric\n");
  const Dataset ds = parse_interpretations("begin(model(m1)).\nend(model(m1)).\n", mapping);
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_TRUE(ds[0].facts->empty());
  EXPECT_TRUE(is_missing(ds[0].values[ds.schema().require("lumo")]));
}

TEST(ParseInterpretations, BlocksAreIndependent) {
  const Dataset ds = parse_interpretations(
      "begin(model(a)).\np(1).\nend(model(a)).\nbegin(model(b)).\np(1).\nq(2).\nend(model(b)).\n");
  ASSERT_EQ(ds.size(), 2u);
  EXPECT_EQ(ds[0].facts->size(), 1u);
  EXPECT_EQ(ds[1].facts->size(), 2u);
  EXPECT_NE(ds[0].facts.get(), ds[1].facts.get());
}

TEST(AttributeMapping, ParsesRolesAndArgument) {
  const AttributeMapping m = parse_attribute_mapping(
      "% comment\nclass act from activity/2 nominal arg 2\ntarget logp from logp/1 numeric\n");
  ASSERT_EQ(m.attributes.size(), 2u);
  EXPECT_EQ(m.attributes[0].role, AttributeRole::class_label);
  EXPECT_EQ(m.attributes[0].argument, 1u);
  EXPECT_EQ(m.attributes[1].role, AttributeRole::target);
}

TEST(EncodeNominals, CodesFollowValueList) {
  const Dataset ds = parse_csv("level\nlow\nhigh\nlow\n?\n");
  const Dataset enc = encode_nominals(ds);
  EXPECT_EQ(enc.schema()[0].kind, AttributeKind::numeric);
  EXPECT_TRUE(enc.schema()[0].encoded);
  EXPECT_DOUBLE_EQ(enc[0].values[0], 0.0);
  EXPECT_DOUBLE_EQ(enc[1].values[0], 1.0);
  EXPECT_DOUBLE_EQ(enc[2].values[0], 0.0);
  EXPECT_TRUE(is_missing(enc[3].values[0]));
}

TEST(EncodeNominals, IdentityOnNumeric) {
  const Dataset ds = parse_csv("a,b\n1,2\n3,4\n");
  const Dataset enc = encode_nominals(ds);
  EXPECT_EQ(ds.schema(), enc.schema());
  EXPECT_EQ(ds[1].values, enc[1].values);
}

TEST(Roles, ClassAndTargets) {
  const Dataset ds = with_class(parse_csv("a,b,c\n1,2,x\n"), "c");
  EXPECT_EQ(ds.schema().class_index(), 2u);
  const std::vector<std::string> targets{"b"};
  EXPECT_EQ(with_targets(ds, targets).schema()[1].role, AttributeRole::target);
  const std::vector<std::string> cls{"c"};
  EXPECT_THROW(with_targets(ds, cls), ConfigError);
  EXPECT_THROW(with_class(ds, "zzz"), ConfigError);
}

TEST(Schema, RejectsDuplicateNames) {
  std::vector<Attribute> attributes(2);
  attributes[0].name = "a";
  attributes[1].name = "a";
  EXPECT_THROW(Schema(std::move(attributes)), ConfigError);
}

}  // namespace
}  // namespace pct
