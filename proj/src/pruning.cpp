#include "pct/pruning.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "pct/error.hpp"
#include "pct/metrics.hpp"
#include "pct/rng.hpp"

namespace pct {

std::string_view to_string(QualityMeasure m) {
  return m == QualityMeasure::classification ? "classification" : "clustering";
}

QualityMeasure quality_measure_from_string(std::string_view text) {
  if (text == "classification") return QualityMeasure::classification;
  if (text == "clustering") return QualityMeasure::clustering;
  throw ConfigError("unknown quality measure '" + std::string(text) + "' (expected classification or clustering)");
}

namespace {

std::size_t validation_size(std::size_t n, double fraction) {
  const auto v = static_cast<std::size_t>(std::llround(static_cast<double>(n) * fraction));
  return std::clamp<std::size_t>(v, 1, n - 1);
}

void check_fraction(std::size_t n, double fraction) {
  if (!(fraction > 0.0) || !(fraction < 1.0)) {
    throw ConfigError("validation fraction must lie strictly between 0 and 1");
  }
  if (n < 2) {
    throw ConfigError("splitting off a validation set needs at least 2 examples");
  }
}

}  // namespace

LearnSplit split_learn_set(std::span<const std::size_t> ids, double validation_fraction, std::uint64_t seed) {
  check_fraction(ids.size(), validation_fraction);
  std::vector<std::size_t> order(ids.begin(), ids.end());
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(order));
  const std::size_t v = validation_size(order.size(), validation_fraction);
  LearnSplit out;
  out.valid.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(v));
  out.train.assign(order.begin() + static_cast<std::ptrdiff_t>(v), order.end());
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.valid.begin(), out.valid.end());
  return out;
}

LearnSplit split_learn_set(const Dataset& ds, std::span<const std::size_t> ids, double validation_fraction,
                           std::uint64_t seed, std::size_t stratify_by) {
  check_fraction(ids.size(), validation_fraction);
  std::map<double, std::vector<std::size_t>> strata;
  std::vector<std::size_t> unknown;
  for (const std::size_t id : ids) {
    const double v = ds[id].values[stratify_by];
    (is_missing(v) ? unknown : strata[v]).push_back(id);
  }
  Rng rng(seed);
  LearnSplit out;
  auto take = [&](std::vector<std::size_t>& group) {
    rng.shuffle(std::span<std::size_t>(group));
    const auto v = static_cast<std::size_t>(
        std::llround(static_cast<double>(group.size()) * validation_fraction));
    const std::size_t cut = std::min(v, group.size());
    out.valid.insert(out.valid.end(), group.begin(), group.begin() + static_cast<std::ptrdiff_t>(cut));
    out.train.insert(out.train.end(), group.begin() + static_cast<std::ptrdiff_t>(cut), group.end());
  };
  for (auto& [value, group] : strata) take(group);
  take(unknown);
  if (out.valid.empty()) {
    out.valid.push_back(out.train.back());
    out.train.pop_back();
  } else if (out.train.empty()) {
    out.train.push_back(out.valid.back());
    out.valid.pop_back();
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.valid.begin(), out.valid.end());
  return out;
}

double tree_quality(const ClusteringTree& tree, const Dataset& ds, std::span<const std::size_t> valid,
                    QualityMeasure measure, std::span<const char> collapsed) {
  if (valid.empty()) {
    throw ConfigError("tree quality needs a non-empty validation set");
  }
  if (measure == QualityMeasure::classification) {
    const auto cls = tree.schema().class_index();
    if (!cls) throw ConfigError("classification quality needs a class attribute");
    std::size_t total = 0;
    std::size_t correct = 0;
    for (const std::size_t id : valid) {
      const double actual = ds[id].values[*cls];
      if (is_missing(actual)) continue;
      const TreeNode& leaf = tree.node(tree.sort(ds[id], collapsed));
      if (!leaf.labels) throw ConfigError("classification quality needs a labeled tree");
      ++total;
      if (leaf.labels->majority_class && *leaf.labels->majority_class == actual) ++correct;
    }
    return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
  }

  std::vector<Prototype> predictions;
  predictions.reserve(valid.size());
  for (const std::size_t id : valid) predictions.push_back(tree.node(tree.sort(ds[id], collapsed)).prototype);
  try {
    const double re = relative_error(ds, valid, predictions, tree.root().prototype, tree.distance());
    return 1.0 / (re + kQualityEpsilon);
  } catch (const REUndefined&) {
    return 0.0;
  }
}

ClusteringTree prune(const ClusteringTree& tree, const Dataset& ds, std::span<const std::size_t> valid,
                     QualityMeasure measure, const PruneOptions& options) {
  std::vector<char> collapsed(tree.size(), 0);
  double quality = tree_quality(tree, ds, valid, measure, collapsed);
  for (bool changed = true; changed;) {
    changed = false;
    // Preorder storage means a reverse scan visits children before parents.
    for (std::size_t i = tree.size(); i-- > 0;) {
      if (tree.node(i).is_leaf() || collapsed[i]) continue;
      bool live = true;
      for (std::size_t at = tree.node(i).parent; at != kNoNode; at = tree.node(at).parent) {
        if (collapsed[at]) {
          live = false;
          break;
        }
      }
      if (!live) continue;
      collapsed[i] = 1;
      const double pruned = tree_quality(tree, ds, valid, measure, collapsed);
      if (pruned > quality || (options.allow_ties && pruned >= quality)) {
        quality = pruned;
        changed = true;
      } else {
        collapsed[i] = 0;
      }
    }
  }
  return tree.contracted(collapsed);
}

}  // namespace pct
