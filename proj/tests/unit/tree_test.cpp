#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "helpers.hpp"
#include "pct/error.hpp"
#include "pct/eval.hpp"
#include "pct/induction.hpp"
#include "pct/tree.hpp"

namespace pct {
namespace {

TEST(TreeJson, RoundTripPropositional) {
  const Dataset ds = parse_csv(read_file(PCT_DATA_DIR "/iris.csv"));
  const Dataset enc = encode_nominals(with_class(ds, "species"));
  InduceConfig c;
  c.split_score = SplitScore::weighted_between_ss;
  c.distance = DistanceSpec(enc.schema(), {0, 1, 2, 3}, {}, Normalization::zscore);
  const ClusteringTree t = assign_leaf_labels(induce_tree(enc, enc.ids(), c), enc, enc.ids());
  const std::string json = to_json(t);
  const ClusteringTree back = tree_from_json(json);
  EXPECT_EQ(to_json(back), json);
  ASSERT_EQ(back.size(), t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_EQ(back.node(i).test, t.node(i).test);
    EXPECT_EQ(back.node(i).parent, t.node(i).parent);
    EXPECT_EQ(back.node(i).cluster, t.node(i).cluster);
  }
  for (const Example& e : enc.examples()) EXPECT_EQ(back.sort(e), t.sort(e));
  EXPECT_EQ(back.distance(), t.distance());
}

TEST(TreeJson, RoundTripRelational) {
  const Dataset ds = parse_interpretations(
      "begin(model(a)).\nbond(a1,a2,7).\nw(3).\nend(model(a)).\n"
      "begin(model(b)).\nbond(b1,b2,1).\nw(0).\nend(model(b)).\n"
      "begin(model(c)).\nbond(c1,c2,7).\nw(4).\nend(model(c)).\n"
      "begin(model(d)).\nbond(d1,d2,1).\nw(1).\nend(model(d)).\n",
      parse_attribute_mapping("target w from w/1 numeric\n"));
  InduceConfig c;
  c.f_alpha = 1.0;
  c.min_leaf = 1;
  c.templates = parse_template_spec("test bond(-atom,-atom,#kind)\n");
  c.distance = DistanceSpec(ds.schema(), {ds.schema().require("w")});
  const ClusteringTree t = induce_tree(ds, ds.ids(), c);
  ASSERT_EQ(t.size(), 3u);
  EXPECT_FALSE(t.root().test->is_attribute_test());
  const std::string json = to_json(t);
  EXPECT_EQ(to_json(tree_from_json(json)), json);
  EXPECT_NE(render_ascii(t).find("bond("), std::string::npos);
}

TEST(TreeJson, RejectsMalformed) {
  EXPECT_THROW(tree_from_json("{"), Error);
  EXPECT_THROW(tree_from_json("{\"format\":\"other\"}"), Error);
}

TEST(Contracted, KeepsOrigins) {
  const Dataset ds = testing::labeled_dataset({1, 2, 8, 9}, {0, 0, 1, 1});
  const ClusteringTree t = testing::build_tree(ds, testing::iota_ids(4), DistanceSpec(ds.schema(), {0}), 0,
                                               {{5.0}, {1.5}, {}, {}, {}});
  std::vector<char> collapsed(t.size(), 0);
  collapsed[1] = 1;
  const ClusteringTree c = t.contracted(collapsed);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c.node(1).origin, 1u);
  EXPECT_EQ(c.node(2).origin, 4u);
  EXPECT_EQ(c.node(2).parent, 0u);
  EXPECT_EQ(c.leaf_count(), 2u);
}

}  // namespace
}  // namespace pct
