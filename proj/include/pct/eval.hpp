#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pct/dataset.hpp"
#include "pct/induction.hpp"
#include "pct/metrics.hpp"
#include "pct/pruning.hpp"
#include "pct/tree.hpp"

namespace pct {

enum class EvalMode { supervised, unsupervised };

std::string_view to_string(EvalMode mode);
EvalMode eval_mode_from_string(std::string_view text);

// ---------------------------------------------------------------------------
// Labels and prediction
// ---------------------------------------------------------------------------

/// Labels every node from the examples of `labeled_ids` in its cluster.
/// Nominal-like attributes get their modal value (ties: first value in the
/// value list), numeric ones their mean. A node without labeled examples,
/// or an attribute without a known value, inherits from the nearest labeled
/// ancestor. Throws ConfigError when `labeled_ids` is empty.
ClusteringTree assign_leaf_labels(const ClusteringTree& tree, const Dataset& ds,
                                  std::span<const std::size_t> labeled_ids);

struct Prediction {
  std::size_t leaf = 0;
  std::optional<LeafLabels> labels;
  Prototype prototype;
};

Prediction predict(const ClusteringTree& tree, const Example& e);

// ---------------------------------------------------------------------------
// Distances used by the evaluation modes
// ---------------------------------------------------------------------------

/// Unsupervised: every numeric descriptive or target attribute. Supervised: the class
/// attribute only.
DistanceSpec default_distance(const Schema& schema, EvalMode mode);

/// Copy of `spec` without the class attribute; throws ConfigError when
/// nothing is left.
DistanceSpec without_class(const DistanceSpec& spec, const Schema& schema);

// ---------------------------------------------------------------------------
// Cross-validation
// ---------------------------------------------------------------------------

/// k disjoint test folds covering every example, each sorted. Stratified
/// folds deal the shuffled members of each class round-robin.
std::vector<std::vector<std::size_t>> make_folds(const Dataset& ds, std::size_t k, std::uint64_t seed,
                                                 std::optional<std::size_t> stratify_by = std::nullopt);

struct EvalConfig {
  /// `induce.distance` with no dims selects default_distance(mode).
  InduceConfig induce;
  EvalMode mode = EvalMode::unsupervised;
  /// 0 selects leave-one-out.
  std::size_t k = 10;
  bool prune = true;
  double validation_fraction = 0.2;
  bool prune_ties = false;
  /// Empty selects clustering for unsupervised and classification for
  /// supervised runs.
  std::optional<QualityMeasure> prune_measure;
  bool stratified_validation = false;
  /// Drop the class from the distance in unsupervised mode.
  bool strip_class = true;
  /// Upper class boundaries for accuracy on a numeric class; a value falls
  /// in the bin of the first boundary above it.
  std::vector<double> class_boundaries;
  bool attribute_report = false;
  std::uint64_t seed = 0;
  /// Folds evaluated concurrently.
  std::size_t jobs = 1;
};

struct AttributeScore {
  std::size_t attribute = 0;
  std::string name;
  std::size_t evaluated = 0;
  std::size_t correct = 0;
  std::size_t default_correct = 0;

  std::optional<double> accuracy() const;
  std::optional<double> default_accuracy() const;
};

struct AttributeTable {
  std::vector<AttributeScore> rows;

  /// Arithmetic means over rows with a defined accuracy.
  std::optional<double> mean_accuracy() const;
  std::optional<double> mean_default() const;
  /// Rows whose accuracy is at least their default accuracy.
  std::size_t at_least_default() const;
};

struct FoldResult {
  std::size_t fold = 0;
  std::size_t train_size = 0;
  std::size_t validation_size = 0;
  std::size_t test_size = 0;
  std::size_t nodes_unpruned = 0;
  std::size_t nodes = 0;
  std::optional<double> accuracy_unpruned;
  std::optional<double> accuracy;
  std::optional<double> re_unpruned;
  std::optional<double> re;
  AttributeTable attributes;
};

struct EvalReport {
  std::size_t folds = 0;
  std::optional<double> accuracy;
  std::optional<double> accuracy_unpruned;
  std::optional<double> re;
  std::optional<double> re_unpruned;
  double mean_nodes = 0.0;
  double mean_nodes_unpruned = 0.0;
  AttributeTable attributes;
  std::vector<FoldResult> fold_results;
  std::vector<std::pair<std::string, std::string>> config;
  std::uint64_t seed = 0;
};

/// Per-fold induction, optional pruning, labeling and testing. When `truth`
/// is given (same schema and size), test accuracy is scored against its
/// class cells while everything else uses `ds`.
EvalReport crossvalidate(const Dataset& ds, const EvalConfig& config, const Dataset* truth = nullptr);

/// Accuracy of a labeled tree on `test_ids`, or empty without a class or
/// without test examples of known class.
std::optional<double> classification_accuracy(const ClusteringTree& tree, const Dataset& ds,
                                              std::span<const std::size_t> test_ids,
                                              std::span<const double> class_boundaries = {},
                                              const Dataset* truth = nullptr);

/// Per nominal-like descriptive or target attribute: how often the leaf modal value
/// equals the actual value, next to the root's modal value (majority
/// prediction). Missing actual values are skipped.
AttributeTable multi_attribute_report(const ClusteringTree& tree, const Dataset& ds,
                                      std::span<const std::size_t> test_ids);

// ---------------------------------------------------------------------------
// Experiments
// ---------------------------------------------------------------------------

/// Each cell of a targeted attribute is kept with its probability and
/// otherwise made missing. Draws run over examples, then attributes in
/// index order.
Dataset corrupt_missing(const Dataset& ds, const std::map<std::size_t, double>& keep_probability,
                        std::uint64_t seed);

struct NamedDistance {
  std::string name;
  DistanceSpec spec;
};

struct MissingInfoTable {
  std::vector<double> levels;
  std::vector<std::string> specs;
  /// accuracy[level][spec]
  std::vector<std::vector<std::optional<double>>> accuracy;
  std::vector<std::vector<double>> mean_nodes;
};

/// For every availability level, corrupts the union of the specs' dims with
/// that keep probability (the class only when `corrupt_class`), then
/// cross-validates each spec (class kept in the distance) and scores against
/// the uncorrupted classes.
MissingInfoTable missing_info_experiment(const Dataset& ds, std::span<const double> levels,
                                         std::span<const NamedDistance> specs, const EvalConfig& base,
                                         bool corrupt_class = true);

/// Synthetic stand-in for a relational dataset with a numeric activity:
/// a hidden two-valued state drives the numeric class `activity` (binned at
/// 0), numeric targets `z1`, `z2`, and noisy structural indicators
/// `s1`..`s4` for the tests.
Dataset missing_info_surrogate(std::size_t n, std::uint64_t seed);

struct SweepRow {
  double validation_fraction = 0.0;
  EvalReport report;
};

std::vector<SweepRow> pruning_sweep(const Dataset& ds, std::span<const double> fractions,
                                    const EvalConfig& base);

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

std::string render_text(const EvalReport& report, const Schema& schema);
std::string render_json(const EvalReport& report);
std::string render_text(const MissingInfoTable& table);
std::string render_json(const MissingInfoTable& table);
std::string render_text(std::span<const SweepRow> rows);
std::string render_json(std::span<const SweepRow> rows);
std::string render_text(const AttributeTable& table);

}  // namespace pct
