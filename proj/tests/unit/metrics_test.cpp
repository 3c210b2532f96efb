#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "pct/error.hpp"
#include "pct/induction.hpp"
#include "pct/metrics.hpp"
#include "pct/rng.hpp"

namespace pct {
namespace {

using testing::numeric_dataset;

DistanceSpec all_dims(const Dataset& ds) {
  std::vector<std::size_t> dims;
  for (std::size_t a = 0; a < ds.schema().size(); ++a) dims.push_back(a);
  return DistanceSpec(ds.schema(), dims);
}

TEST(Distance, Examples) {
  const Dataset ds = numeric_dataset({{0, 0}, {3, 4}, {0, kMissing}, {3, 7}}, 2);
  const DistanceSpec spec = all_dims(ds);
  EXPECT_DOUBLE_EQ(distance(ds[1], ds[1], spec), 0.0);
  EXPECT_DOUBLE_EQ(distance(ds[0], ds[1], spec), 5.0);
  EXPECT_NEAR(distance(ds[2], ds[3], spec), std::sqrt(18.0), 1e-12);
  EXPECT_NEAR(distance(ds[2], ds[3], spec), 4.2426, 1e-4);
}

TEST(Distance, UndefinedWithoutSharedDims) {
  const Dataset ds = numeric_dataset({{kMissing, 1}, {2, kMissing}}, 2);
  EXPECT_THROW(distance(ds[0], ds[1], all_dims(ds)), DistanceUndefined);
}

TEST(Distance, WeightsAndNormalization) {
  const Dataset ds = numeric_dataset({{0, 0}, {10, 1}}, 2);
  const DistanceSpec weighted(ds.schema(), {0, 1}, {1.0, 4.0});
  EXPECT_NEAR(distance(ds[0], ds[1], weighted), std::sqrt(100.0 + 4.0), 1e-12);
  const DistanceSpec minmax = DistanceSpec(ds.schema(), {0, 1}, {}, Normalization::minmax).frozen_on(ds, ds.ids());
  EXPECT_NEAR(distance(ds[0], ds[1], minmax), std::sqrt(2.0), 1e-12);
  const DistanceSpec unfrozen(ds.schema(), {0, 1}, {}, Normalization::zscore);
  EXPECT_THROW(distance(ds[0], ds[1], unfrozen), ConfigError);
}

TEST(DistanceSpec, ParseAndValidate) {
  const Dataset ds = numeric_dataset({{0, 0}}, 2);
  const DistanceSpec spec = DistanceSpec::parse("dims=a1,a0 weights=2,3 norm=minmax", ds.schema());
  EXPECT_EQ(spec.dims()[0], 1u);
  EXPECT_DOUBLE_EQ(spec.weights()[1], 3.0);
  EXPECT_EQ(spec.normalization(), Normalization::minmax);
  EXPECT_THROW(DistanceSpec(ds.schema(), {}), ConfigError);
  EXPECT_THROW(DistanceSpec(ds.schema(), {0, 0}), ConfigError);
  EXPECT_THROW(DistanceSpec(ds.schema(), {0}, {-1.0}), ConfigError);
}

TEST(Prototype, Means) {
  const Dataset ds = numeric_dataset({{1}, {3}, {kMissing}, {4}}, 1);
  const DistanceSpec spec = all_dims(ds);
  const std::vector<std::size_t> single{1};
  EXPECT_DOUBLE_EQ(prototype(ds, single, spec).mean[0], 3.0);
  const std::vector<std::size_t> pair{0, 1};
  EXPECT_DOUBLE_EQ(prototype(ds, pair, spec).mean[0], 2.0);
  const std::vector<std::size_t> gappy{0, 2, 3};
  const Prototype p = prototype(ds, gappy, spec);
  EXPECT_DOUBLE_EQ(p.mean[0], 2.5);
  EXPECT_EQ(p.support[0], 2u);
  EXPECT_THROW(prototype(ds, std::vector<std::size_t>{}, spec), EmptyCluster);
}

TEST(ClusterDistance, Examples) {
  const Dataset ds = numeric_dataset({{0, 0}, {2, 0}, {8, 0}, {10, 0}}, 2);
  const DistanceSpec spec = all_dims(ds);
  const std::vector<std::size_t> c1{0, 1};
  const std::vector<std::size_t> c2{2, 3};
  EXPECT_DOUBLE_EQ(cluster_distance(ds, c1, c2, spec), 8.0);
  EXPECT_DOUBLE_EQ(cluster_distance(ds, c1, c1, spec), 0.0);
  const std::vector<std::size_t> s0{0};
  const std::vector<std::size_t> s3{3};
  EXPECT_DOUBLE_EQ(cluster_distance(ds, s0, s3, spec), distance(ds[0], ds[3], spec));
}

TEST(SumSquares, Examples) {
  const Dataset ds = numeric_dataset({{0}, {2}, {8}, {10}, {5}, {5}}, 1);
  const DistanceSpec spec = all_dims(ds);
  EXPECT_DOUBLE_EQ(sum_squares(ds, std::vector<std::size_t>{0, 1, 2, 3}, spec), 68.0);
  EXPECT_DOUBLE_EQ(sum_squares(ds, std::vector<std::size_t>{0, 1}, spec), 2.0);
  EXPECT_DOUBLE_EQ(sum_squares(ds, std::vector<std::size_t>{4, 5}, spec), 0.0);
}

TEST(RelativeError, Examples) {
  const Dataset ds = numeric_dataset({{1}, {2}, {3}}, 1);
  const DistanceSpec spec = all_dims(ds);
  const std::vector<std::size_t> ids{0, 1, 2};
  auto point = [](double v) { return Prototype{{v}, {1}}; };
  const Prototype baseline = point(2.0);
  const std::vector<Prototype> half{point(1.5), point(2.0), point(2.5)};
  EXPECT_DOUBLE_EQ(relative_error(ds, ids, half, baseline, spec), 0.25);
  const std::vector<Prototype> perfect{point(1), point(2), point(3)};
  EXPECT_EQ(relative_error(ds, ids, perfect, baseline, spec), 0.0);
  const std::vector<Prototype> base(3, baseline);
  EXPECT_EQ(relative_error(ds, ids, base, baseline, spec), 1.0);
}

TEST(RelativeError, ZeroDenominator) {
  const Dataset ds = numeric_dataset({{2}, {2}}, 1);
  const DistanceSpec spec = all_dims(ds);
  const std::vector<std::size_t> ids{0, 1};
  const Prototype baseline{{2.0}, {2}};
  EXPECT_EQ(relative_error(ds, ids, std::vector<Prototype>(2, baseline), baseline, spec), 0.0);
  const std::vector<Prototype> off(2, Prototype{{3.0}, {1}});
  EXPECT_THROW(relative_error(ds, ids, off, baseline, spec), REUndefined);
}

TEST(RelativeError, BaselineIsOneOnRandomData) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 7; ++i) rows.push_back({rng.uniform01() * 10, rng.uniform01() * 10 - 5});
    const Dataset ds = numeric_dataset(rows, 2);
    const DistanceSpec spec = all_dims(ds);
    const Prototype root = prototype(ds, ds.ids(), spec);
    EXPECT_EQ(relative_error(ds, ds.ids(), std::vector<Prototype>(ds.size(), root), root, spec), 1.0);
    std::vector<Prototype> exact;
    for (const Example& e : ds.examples()) exact.push_back(Prototype{e.values, {1, 1}});
    EXPECT_EQ(relative_error(ds, ds.ids(), exact, root, spec), 0.0);
  }
}

TEST(VarianceDecomposition, HoldsForEveryPartition) {
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 6; ++i) rows.push_back({rng.uniform01() * 20 - 10, rng.uniform01() * 4, rng.uniform01()});
    const Dataset ds = numeric_dataset(rows, 3);
    const DistanceSpec spec = all_dims(ds);
    for (unsigned mask = 1; mask < 63; ++mask) {
      std::vector<std::size_t> left;
      std::vector<std::size_t> right;
      for (std::size_t i = 0; i < 6; ++i) ((mask >> i) & 1u ? left : right).push_back(i);
      const SplitStatistics s = score_split(ds, left, right, spec, SplitScore::inter_distance);
      const double nl = static_cast<double>(left.size());
      const double nr = static_cast<double>(right.size());
      const double rhs = s.ss_left + s.ss_right + nl * nr / 6.0 * s.inter_distance * s.inter_distance;
      ASSERT_NEAR(s.ss, rhs, 1e-9) << "trial " << trial << " mask " << mask;
    }
  }
}

}  // namespace
}  // namespace pct
