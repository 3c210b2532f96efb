#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pct/dataset.hpp"
#include "pct/logic.hpp"
#include "pct/metrics.hpp"

namespace pct {

inline constexpr std::size_t kNoNode = std::numeric_limits<std::size_t>::max();

/// Labels predicted by a node: per attribute the modal value (nominal-like
/// attributes) or the mean (numeric ones), from the labeled training
/// examples in the node's cluster. NaN marks an attribute with no label.
struct LeafLabels {
  std::vector<double> value;
  std::vector<std::size_t> support;
  std::optional<double> majority_class;

  bool operator==(const LeafLabels&) const = default;
};

struct TreeNode {
  std::optional<TestQuery> test;
  std::size_t yes = kNoNode;
  std::size_t no = kNoNode;
  std::size_t parent = kNoNode;
  std::size_t depth = 0;
  /// Index of the corresponding node in the tree this one was contracted
  /// from; equal to the node's own index in a freshly induced tree.
  std::size_t origin = 0;
  /// Sorted training example ids.
  std::vector<std::size_t> cluster;
  Prototype prototype;
  std::optional<SplitStatistics> stats;
  std::optional<LeafLabels> labels;

  bool is_leaf() const { return !test.has_value(); }
};

/// Settings a tree was induced with, echoed in serialized trees.
struct TreeSettings {
  std::string split_score = "inter_distance";
  double f_alpha = 0.01;
  std::size_t min_leaf = 2;
  std::optional<std::size_t> max_depth;
  std::size_t max_literals = 2;
  std::uint64_t seed = 0;

  bool operator==(const TreeSettings&) const = default;
};

/// Binary clustering tree stored as a node arena in preorder (node, yes
/// subtree, no subtree); node 0 is the root.
class ClusteringTree {
 public:
  ClusteringTree() = default;
  ClusteringTree(Schema schema, DistanceSpec distance, TemplateSet templates, TreeSettings settings,
                 std::vector<TreeNode> nodes);

  const Schema& schema() const { return schema_; }
  const DistanceSpec& distance() const { return distance_; }
  const TemplateSet& templates() const { return templates_; }
  const TreeSettings& settings() const { return settings_; }
  std::span<const TreeNode> nodes() const { return nodes_; }
  const TreeNode& node(std::size_t i) const { return nodes_[i]; }
  const TreeNode& root() const { return nodes_.front(); }
  std::size_t size() const { return nodes_.size(); }
  std::size_t leaf_count() const;
  std::vector<std::size_t> leaves() const;

  /// Leaf reached by replaying the node tests. Nodes flagged in `collapsed`
  /// (indexed by node) are treated as leaves.
  std::size_t sort(const Example& e, std::span<const char> collapsed = {}) const;

  /// Literals of the succeeded tests on the path from the root to `node`.
  std::vector<Literal> path_literals(std::size_t node) const;

  /// Copy in which every flagged node is a leaf and unreachable nodes are
  /// dropped. Origins refer to the original tree's origins.
  ClusteringTree contracted(std::span<const char> collapsed) const;

  /// Copy with labels replaced node by node.
  ClusteringTree with_labels(std::vector<std::optional<LeafLabels>> labels) const;

 private:
  Schema schema_;
  DistanceSpec distance_;
  TemplateSet templates_;
  TreeSettings settings_;
  std::vector<TreeNode> nodes_;
};

/// Structured document ("pct-tree/1"); see README for the schema.
std::string to_json(const ClusteringTree& tree);
ClusteringTree tree_from_json(std::string_view text);

/// Indented yes/no rendering, one node per line.
std::string render_ascii(const ClusteringTree& tree);

}  // namespace pct
