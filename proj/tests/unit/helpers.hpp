#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pct/dataset.hpp"
#include "pct/metrics.hpp"
#include "pct/tree.hpp"

namespace pct::testing {

/// Numeric descriptive attributes a0..a{width-1}.
inline Dataset numeric_dataset(const std::vector<std::vector<double>>& rows, std::size_t width) {
  std::vector<Attribute> attributes;
  for (std::size_t a = 0; a < width; ++a) {
    attributes.push_back(Attribute{"a" + std::to_string(a), AttributeKind::numeric, AttributeRole::descriptive, {}, false});
  }
  std::vector<Example> examples;
  for (const auto& row : rows) {
    Example e;
    e.values = row;
    examples.push_back(std::move(e));
  }
  return Dataset(Schema(std::move(attributes)), std::move(examples));
}

/// One numeric attribute `x` plus an encoded class `cls` over {pos, neg}.
inline Dataset labeled_dataset(const std::vector<double>& xs, const std::vector<double>& classes) {
  std::vector<Attribute> attributes{
      Attribute{"x", AttributeKind::numeric, AttributeRole::descriptive, {}, false},
      Attribute{"cls", AttributeKind::numeric, AttributeRole::class_label, {"pos", "neg"}, true},
  };
  std::vector<Example> examples;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Example e;
    e.values = {xs[i], classes[i]};
    examples.push_back(std::move(e));
  }
  return Dataset(Schema(std::move(attributes)), std::move(examples));
}

inline std::vector<std::size_t> iota_ids(std::size_t n) {
  std::vector<std::size_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = i;
  return ids;
}

/// Hand-built tree over `ds`. `tests[i]` is the threshold of a split on
/// attribute `attribute` at node i (nullopt for a leaf); children follow in
/// preorder. Clusters and prototypes are filled from `ids`.
struct NodeSpec {
  std::optional<double> threshold;
};

inline ClusteringTree build_tree(const Dataset& ds, const std::vector<std::size_t>& ids, const DistanceSpec& spec,
                                 std::size_t attribute, const std::vector<NodeSpec>& preorder) {
  std::vector<TreeNode> nodes;
  std::size_t next = 0;
  auto build = [&](auto& self, std::vector<std::size_t> cluster, std::size_t parent, std::size_t depth) -> std::size_t {
    const std::size_t at = nodes.size();
    const NodeSpec s = preorder.at(next++);
    nodes.emplace_back();
    nodes[at].parent = parent;
    nodes[at].depth = depth;
    nodes[at].origin = at;
    nodes[at].cluster = cluster;
    nodes[at].prototype = prototype(ds, cluster, spec);
    if (!s.threshold) return at;
    const AttributeTest test{attribute, Comparator::less_equal, *s.threshold};
    std::vector<std::size_t> yes;
    std::vector<std::size_t> no;
    for (const std::size_t id : cluster) (TestQuery(test).passes(ds[id]) ? yes : no).push_back(id);
    nodes[at].test = TestQuery(test);
    const std::size_t y = self(self, yes, at, depth + 1);
    const std::size_t n = self(self, no, at, depth + 1);
    nodes[at].yes = y;
    nodes[at].no = n;
    return at;
  };
  build(build, ids, kNoNode, 0);
  return ClusteringTree(ds.schema(), spec, {}, {}, std::move(nodes));
}

}  // namespace pct::testing
