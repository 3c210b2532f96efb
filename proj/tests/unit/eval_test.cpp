#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <vector>

#include "helpers.hpp"
#include "pct/error.hpp"
#include "pct/eval.hpp"
#include "pct/induction.hpp"
#include "pct/logic.hpp"

namespace pct {
namespace {

using testing::build_tree;
using testing::iota_ids;
using testing::labeled_dataset;

constexpr double kPos = 0.0;
constexpr double kNeg = 1.0;

TEST(LeafLabels, MajorityTieAndInheritance) {
  const Dataset ds = labeled_dataset({1, 2, 3, 4, 8, 9, 10, 11, 20},
                                     {kPos, kPos, kPos, kNeg, kPos, kPos, kNeg, kNeg, kNeg});
  const ClusteringTree t = build_tree(ds, iota_ids(9), DistanceSpec(ds.schema(), {0}), 0,
                                      {{5.0}, {}, {15.0}, {}, {}});
  const std::vector<std::size_t> labeled{0, 1, 2, 3, 4, 5, 6, 7};
  const ClusteringTree l = assign_leaf_labels(t, ds, labeled);
  EXPECT_EQ(l.node(1).labels->majority_class, kPos);
  EXPECT_EQ(l.node(3).labels->majority_class, kPos);
  EXPECT_EQ(l.node(3).labels->support[1], 4u);
  EXPECT_EQ(l.node(4).labels->support[1], 0u);
  EXPECT_EQ(l.node(4).labels->majority_class, l.node(2).labels->majority_class);
  const std::vector<std::size_t> neg_parent{6, 7, 8};
  const ClusteringTree m = assign_leaf_labels(t, ds, neg_parent);
  EXPECT_EQ(m.node(2).labels->majority_class, kNeg);
  EXPECT_EQ(m.node(1).labels->majority_class, kNeg);
}

TEST(Predict, AttributeRoot) {
  const Dataset ds = labeled_dataset({3, 8}, {kPos, kNeg});
  const ClusteringTree single = build_tree(ds, iota_ids(2), DistanceSpec(ds.schema(), {0}), 0, {{}});
  EXPECT_EQ(predict(single, ds[0]).leaf, 0u);
  EXPECT_EQ(predict(single, ds[1]).leaf, 0u);
  const ClusteringTree t = build_tree(ds, iota_ids(2), DistanceSpec(ds.schema(), {0}), 0, {{5.0}, {}, {}});
  EXPECT_EQ(predict(t, ds[0]).leaf, t.root().yes);
  EXPECT_EQ(predict(t, ds[1]).leaf, t.root().no);
}

TEST(Predict, AtomTypeTest) {
  const AttributeMapping mapping = parse_attribute_mapping("attribute lumo from lumo/1 numeric\n");
  const Dataset ds = parse_interpretations(
      "begin(model(m1)).\nlumo(-1.0).\natom(m1,a1,c,14).\natom(m1,a2,h,3).\nend(model(m1)).\n"
      "begin(model(m2)).\nlumo(-2.0).\natom(m2,a1,c,22).\nend(model(m2)).\n",
      mapping);
  const DistanceSpec spec(ds.schema(), {ds.schema().require("lumo")});
  std::vector<TreeNode> nodes(3);
  nodes[0].test = TestQuery(ConjunctiveTest{parse_conjunction("atom(M,A,E,14)")});
  nodes[0].yes = 1;
  nodes[0].no = 2;
  nodes[0].cluster = {0, 1};
  nodes[1].parent = nodes[2].parent = 0;
  nodes[1].depth = nodes[2].depth = 1;
  nodes[1].origin = 1;
  nodes[2].origin = 2;
  nodes[1].cluster = {0};
  nodes[2].cluster = {1};
  for (TreeNode& n : nodes) n.prototype = prototype(ds, n.cluster, spec);
  const ClusteringTree t(ds.schema(), spec, {}, {}, std::move(nodes));
  EXPECT_EQ(predict(t, ds[0]).leaf, 1u);
  EXPECT_EQ(predict(t, ds[1]).leaf, 2u);
  EXPECT_DOUBLE_EQ(predict(t, ds[0]).prototype.mean[0], -1.0);
}

TEST(Folds, SizesAndPartition) {
  const Dataset small = labeled_dataset(std::vector<double>(46, 1.0), std::vector<double>(46, kPos));
  const auto loo = make_folds(small, 46, 1);
  ASSERT_EQ(loo.size(), 46u);
  for (const auto& f : loo) EXPECT_EQ(f.size(), 1u);

  std::vector<double> xs(150);
  std::vector<double> cls(150);
  for (std::size_t i = 0; i < 150; ++i) {
    xs[i] = static_cast<double>(i);
    cls[i] = i % 3 == 0 ? kPos : kNeg;
  }
  const Dataset ds = labeled_dataset(xs, cls);
  for (const auto strat : {std::optional<std::size_t>{}, std::optional<std::size_t>{1}}) {
    const auto folds = make_folds(ds, 10, 7, strat);
    std::vector<std::size_t> all;
    for (const auto& f : folds) {
      EXPECT_EQ(f.size(), 15u);
      all.insert(all.end(), f.begin(), f.end());
    }
    std::sort(all.begin(), all.end());
    EXPECT_EQ(all, ds.ids());
    EXPECT_EQ(folds, make_folds(ds, 10, 7, strat));
  }
  EXPECT_NE(make_folds(ds, 10, 7), make_folds(ds, 10, 8));
  EXPECT_THROW(make_folds(ds, 1, 0), ConfigError);
  EXPECT_THROW(make_folds(ds, 151, 0), ConfigError);
}

Dataset two_groups() {
  std::vector<double> xs;
  std::vector<double> cls;
  for (int i = 0; i < 60; ++i) {
    const double c = i % 2 == 0 ? kPos : kNeg;
    xs.push_back(c * 10.0 + static_cast<double>(i % 7));
    cls.push_back(c);
  }
  return labeled_dataset(xs, cls);
}

TEST(CrossValidate, DeterministicAndJobIndependent) {
  const Dataset ds = two_groups();
  EvalConfig c;
  c.mode = EvalMode::supervised;
  c.induce.split_score = SplitScore::weighted_between_ss;
  c.seed = 3;
  const EvalReport a = crossvalidate(ds, c);
  EXPECT_EQ(a.folds, 10u);
  ASSERT_TRUE(a.accuracy);
  EXPECT_GT(*a.accuracy, 0.9);
  c.jobs = 4;
  EXPECT_EQ(render_json(a), render_json(crossvalidate(ds, c)));
  c.k = 0;
  EXPECT_EQ(crossvalidate(ds, c).folds, 60u);
}

TEST(AttributeReport, Fixtures) {
  std::vector<Attribute> attributes{
      Attribute{"x", AttributeKind::numeric, AttributeRole::descriptive, {}, false},
      Attribute{"y", AttributeKind::numeric, AttributeRole::descriptive, {"a", "b"}, true},
      Attribute{"z", AttributeKind::numeric, AttributeRole::descriptive, {"u", "v"}, true},
  };
  std::vector<Example> examples;
  for (const auto& row : std::vector<std::vector<double>>{{1, 0, 1}, {2, 0, 1}, {8, 1, 1}, {9, 1, 1}}) {
    Example e;
    e.values = row;
    examples.push_back(std::move(e));
  }
  const Dataset ds(Schema(std::move(attributes)), std::move(examples));
  const DistanceSpec spec(ds.schema(), {0});
  const ClusteringTree split = assign_leaf_labels(build_tree(ds, iota_ids(4), spec, 0, {{5.0}, {}, {}}), ds, iota_ids(4));
  const AttributeTable t = multi_attribute_report(split, ds, iota_ids(4));
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0].accuracy(), 1.0);
  EXPECT_EQ(t.rows[0].default_accuracy(), 0.5);
  EXPECT_EQ(t.rows[1].accuracy(), 1.0);
  const ClusteringTree leaf = assign_leaf_labels(build_tree(ds, iota_ids(4), spec, 0, {{}}), ds, iota_ids(4));
  for (const AttributeScore& r : multi_attribute_report(leaf, ds, iota_ids(4)).rows) {
    EXPECT_EQ(r.accuracy(), r.default_accuracy());
  }
}

TEST(CorruptMissing, Bounds) {
  std::vector<std::vector<double>> rows(5000, std::vector<double>{1.0, 2.0, 3.0});
  const Dataset ds = testing::numeric_dataset(rows, 3);
  const Dataset same = corrupt_missing(ds, {{0, 1.0}, {1, 1.0}}, 1);
  for (std::size_t i = 0; i < ds.size(); ++i) EXPECT_EQ(same[i].values, ds[i].values);
  const Dataset none = corrupt_missing(ds, {{0, 0.0}}, 1);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    EXPECT_TRUE(is_missing(none[i].values[0]));
    EXPECT_EQ(none[i].values[1], 2.0);
  }
  const Dataset half = corrupt_missing(ds, {{0, 0.5}, {2, 0.5}}, 9);
  std::size_t kept = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    kept += is_missing(half[i].values[0]) ? 0 : 1;
    kept += is_missing(half[i].values[2]) ? 0 : 1;
    EXPECT_EQ(half[i].values[1], 2.0);
  }
  const double fraction = static_cast<double>(kept) / 10000.0;
  EXPECT_GE(fraction, 0.47);
  EXPECT_LE(fraction, 0.53);
}

TEST(MissingInfo, GridShapeAndFullAvailability) {
  const Dataset ds = missing_info_surrogate(120, 4);
  EvalConfig base;
  base.mode = EvalMode::unsupervised;
  base.induce.split_score = SplitScore::weighted_between_ss;
  base.class_boundaries = {0.0};
  base.seed = 4;
  const std::vector<NamedDistance> specs{
      {"class-only", DistanceSpec::parse("dims=activity", ds.schema())},
      {"three-attr", DistanceSpec::parse("dims=activity,z1,z2", ds.schema())},
  };
  const std::vector<double> levels{1.0, 0.5, 0.25, 0.1};
  const MissingInfoTable table = missing_info_experiment(ds, levels, specs, base);
  ASSERT_EQ(table.accuracy.size(), 4u);
  for (const auto& row : table.accuracy) EXPECT_EQ(row.size(), 2u);
  for (std::size_t s = 0; s < specs.size(); ++s) {
    EvalConfig c = base;
    c.induce.distance = specs[s].spec;
    c.strip_class = false;
    EXPECT_EQ(table.accuracy[0][s], crossvalidate(ds, c, &ds).accuracy);
  }
}

}  // namespace
}  // namespace pct
