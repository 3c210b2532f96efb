#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pct/dataset.hpp"
#include "pct/logic.hpp"
#include "pct/metrics.hpp"
#include "pct/tree.hpp"

namespace pct {

enum class SplitScore {
  inter_distance,       // d(p(C_yes), p(C_no))
  weighted_between_ss,  // (n_yes * n_no / n) * d(p(C_yes), p(C_no))^2
};

std::string_view to_string(SplitScore mode);
SplitScore split_score_from_string(std::string_view text);

struct InduceConfig {
  SplitScore split_score = SplitScore::inter_distance;
  double f_alpha = 0.01;
  std::size_t min_leaf = 2;
  std::optional<std::size_t> max_depth;
  DistanceSpec distance;
  TemplateSet templates;
  CandidateOptions candidates;
  std::uint64_t seed = 0;
  /// Worker threads for candidate scoring; the result does not depend on it.
  std::size_t jobs = 1;
};

/// Statistics of the partition (yes, no). Throws InvalidPartition when a
/// side is empty, DistanceUndefined when the prototypes share no dim.
/// `f` is filled when at least 3 informative examples are present.
SplitStatistics score_split(const Dataset& ds, std::span<const std::size_t> yes,
                            std::span<const std::size_t> no, const DistanceSpec& spec, SplitScore mode);

/// (SS/(n-1)) / ((SS_yes+SS_no)/(n-2)); +inf for a perfect split, 0 when
/// SS is 0 or the split increases dispersion. Throws TooFewExamples for n < 3.
double f_statistic(double ss, double ss_yes, double ss_no, std::size_t n);

/// True iff F exceeds the upper-alpha critical value of F(n-1, n-2).
bool f_test_accept(double f, std::size_t n, double alpha);

struct SplitChoice {
  TestQuery test;
  std::size_t candidate = 0;
  SplitStatistics stats;
  std::vector<std::size_t> yes;
  std::vector<std::size_t> no;
};

struct SplitSearch {
  SplitScore mode = SplitScore::inter_distance;
  std::size_t min_leaf = 1;
  std::size_t jobs = 1;
};

/// Highest-scoring candidate whose sides both hold at least min_leaf
/// examples; ties go to the earliest candidate. Candidates whose prototypes
/// share no defined dim are skipped.
std::optional<SplitChoice> best_split(const Dataset& ds, std::span<const std::size_t> cluster,
                                      std::span<const TestQuery> candidates,
                                      std::span<const Literal> path, const DistanceSpec& spec,
                                      const SplitSearch& search = {});

/// Top-down induction. Normalization scales of config.distance are frozen
/// on train_ids unless already frozen.
ClusteringTree induce_tree(const Dataset& ds, std::span<const std::size_t> train_ids,
                           const InduceConfig& config);

}  // namespace pct
