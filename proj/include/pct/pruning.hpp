#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "pct/dataset.hpp"
#include "pct/tree.hpp"

namespace pct {

enum class QualityMeasure {
  classification,  // accuracy of the majority class of the reached leaf
  clustering,      // 1 / (RE + 1e-9), leaf prototypes against the root prototype
};

std::string_view to_string(QualityMeasure m);
QualityMeasure quality_measure_from_string(std::string_view text);

inline constexpr double kQualityEpsilon = 1e-9;

struct LearnSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> valid;
};

/// Uniform random split; the validation side has round(n * fraction)
/// examples, clamped so both sides are non-empty. Both sides are sorted.
/// With `stratify_by` set, the split is drawn per value of that attribute.
LearnSplit split_learn_set(std::span<const std::size_t> ids, double validation_fraction, std::uint64_t seed);
LearnSplit split_learn_set(const Dataset& ds, std::span<const std::size_t> ids, double validation_fraction,
                           std::uint64_t seed, std::size_t stratify_by);

/// Quality of `tree` on `valid` examples of `ds`. Nodes flagged in
/// `collapsed` act as leaves. Classification needs labeled nodes (throws
/// ConfigError otherwise) and counts only examples with a known class.
double tree_quality(const ClusteringTree& tree, const Dataset& ds, std::span<const std::size_t> valid,
                    QualityMeasure measure, std::span<const char> collapsed = {});

struct PruneOptions {
  /// Collapse on Q' >= Q instead of Q' > Q.
  bool allow_ties = false;
};

/// Bottom-up passes collapsing every internal node whose collapse improves
/// validation quality, repeated until nothing changes. Returns a contracted
/// copy.
ClusteringTree prune(const ClusteringTree& tree, const Dataset& ds, std::span<const std::size_t> valid,
                     QualityMeasure measure, const PruneOptions& options = {});

}  // namespace pct
