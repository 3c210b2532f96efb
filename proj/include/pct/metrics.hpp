#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pct/dataset.hpp"

namespace pct {

enum class Normalization { none, minmax, zscore };

std::string_view to_string(Normalization n);
Normalization normalization_from_string(std::string_view text);

/// Which attributes enter the distance, with per-dimension weights and
/// normalization scales. Scales are frozen from a training set before any
/// distance is computed (trivially so for Normalization::none).
class DistanceSpec {
 public:
  DistanceSpec() = default;
  /// Throws ConfigError if dims is empty, repeats an attribute, names a
  /// non-numeric attribute, or weights are not positive.
  DistanceSpec(const Schema& schema, std::vector<std::size_t> dims, std::vector<double> weights = {},
               Normalization normalization = Normalization::none);

  /// Parses `dims=a,b weights=1,2 norm=zscore` (weights and norm optional).
  static DistanceSpec parse(std::string_view text, const Schema& schema);

  std::span<const std::size_t> dims() const { return dims_; }
  std::size_t size() const { return dims_.size(); }
  std::span<const double> weights() const { return weights_; }
  Normalization normalization() const { return normalization_; }
  std::span<const double> scales() const { return scales_; }
  bool frozen() const { return frozen_; }

  /// Copy with scales computed from `ids` of `ds` (range for minmax,
  /// standard deviation for zscore; a zero spread maps to scale 1).
  DistanceSpec frozen_on(const Dataset& ds, std::span<const std::size_t> ids) const;
  /// Copy with explicitly supplied scales, e.g. when loading a saved tree.
  DistanceSpec with_scales(std::vector<double> scales) const;
  /// Copy with every weight multiplied by `factor`.
  DistanceSpec scaled_weights(double factor) const;

  std::string to_string(const Schema& schema) const;

  bool operator==(const DistanceSpec&) const = default;

 private:
  std::vector<std::size_t> dims_;
  std::vector<double> weights_;
  Normalization normalization_ = Normalization::none;
  std::vector<double> scales_;
  bool frozen_ = false;
};

/// Per-dimension mean over the non-missing cells of a cluster. A dimension
/// with zero support is undefined (NaN mean).
struct Prototype {
  std::vector<double> mean;
  std::vector<std::size_t> support;

  bool defined(std::size_t dim) const { return support[dim] > 0; }
  bool operator==(const Prototype&) const = default;
};

/// The distance dims of one example, in dim order.
std::vector<double> project(const Example& e, const DistanceSpec& spec);

/// sqrt(c * sum_w (diff/scale)^2) over dims defined in both points, with
/// c = |dims| / |defined dims|. Empty when no dim is defined in both.
std::optional<double> try_distance(std::span<const double> a, std::span<const double> b,
                                   const DistanceSpec& spec);

/// As try_distance but throws DistanceUndefined.
double distance(std::span<const double> a, std::span<const double> b, const DistanceSpec& spec);
double distance(const Example& a, const Example& b, const DistanceSpec& spec);
double distance(const Example& a, const Prototype& b, const DistanceSpec& spec);
double distance(const Prototype& a, const Prototype& b, const DistanceSpec& spec);

/// Throws EmptyCluster for an empty id list.
Prototype prototype(const Dataset& ds, std::span<const std::size_t> cluster, const DistanceSpec& spec);

double cluster_distance(const Dataset& ds, std::span<const std::size_t> first,
                        std::span<const std::size_t> second, const DistanceSpec& spec);

/// Sum of squared distances to the cluster prototype. Examples with no dim
/// in common with the prototype carry no information and contribute 0.
double sum_squares(const Dataset& ds, std::span<const std::size_t> cluster, const DistanceSpec& spec);

/// Number of examples with at least one defined dim.
std::size_t informative_count(const Dataset& ds, std::span<const std::size_t> cluster,
                              const DistanceSpec& spec);

/// sum d(e_i, prediction_i)^2 / sum d(e_i, baseline)^2. Examples without a
/// defined distance to either are skipped. 0/0 is 0; x/0 throws REUndefined.
double relative_error(const Dataset& ds, std::span<const std::size_t> actuals,
                      std::span<const Prototype> predictions, const Prototype& baseline,
                      const DistanceSpec& spec);

/// Sufficient statistics of a binary split.
struct SplitStatistics {
  std::size_t n = 0;
  std::size_t n_left = 0;
  std::size_t n_right = 0;
  double ss = 0.0;
  double ss_left = 0.0;
  double ss_right = 0.0;
  /// F statistic; +inf for a perfect split. NaN until computed (n < 3).
  double f = std::numeric_limits<double>::quiet_NaN();
  Prototype proto_left;
  Prototype proto_right;
  double inter_distance = 0.0;
  double score = 0.0;
};

}  // namespace pct
