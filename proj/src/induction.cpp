#include "pct/induction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "pct/error.hpp"
#include "pct/fdist.hpp"

namespace pct {

std::string_view to_string(SplitScore mode) {
  return mode == SplitScore::inter_distance ? "inter_distance" : "weighted_between_ss";
}

SplitScore split_score_from_string(std::string_view text) {
  if (text == "inter_distance") return SplitScore::inter_distance;
  if (text == "weighted_between_ss") return SplitScore::weighted_between_ss;
  throw ConfigError("unknown split score '" + std::string(text) +
                    "' (expected inter_distance or weighted_between_ss)");
}

namespace {

double score_of(double inter, std::size_t n_yes, std::size_t n_no, SplitScore mode) {
  if (mode == SplitScore::inter_distance) return inter;
  const double n = static_cast<double>(n_yes + n_no);
  return static_cast<double>(n_yes) * static_cast<double>(n_no) / n * inter * inter;
}

}  // namespace

SplitStatistics score_split(const Dataset& ds, std::span<const std::size_t> yes,
                            std::span<const std::size_t> no, const DistanceSpec& spec, SplitScore mode) {
  if (yes.empty() || no.empty()) {
    throw InvalidPartition("split has an empty side");
  }
  std::vector<std::size_t> all(yes.begin(), yes.end());
  all.insert(all.end(), no.begin(), no.end());

  SplitStatistics s;
  s.n_left = yes.size();
  s.n_right = no.size();
  s.n = all.size();
  s.ss = sum_squares(ds, all, spec);
  s.ss_left = sum_squares(ds, yes, spec);
  s.ss_right = sum_squares(ds, no, spec);
  s.proto_left = prototype(ds, yes, spec);
  s.proto_right = prototype(ds, no, spec);
  s.inter_distance = distance(s.proto_left, s.proto_right, spec);
  s.score = score_of(s.inter_distance, s.n_left, s.n_right, mode);
  const std::size_t informative = informative_count(ds, all, spec);
  if (informative >= 3) s.f = f_statistic(s.ss, s.ss_left, s.ss_right, informative);
  return s;
}

double f_statistic(double ss, double ss_yes, double ss_no, std::size_t n) {
  if (n < 3) {
    throw TooFewExamples("F statistic needs at least 3 examples, got " + std::to_string(n));
  }
  const double within = ss_yes + ss_no;
  if (ss <= 0.0) return 0.0;
  if (within > ss) return 0.0;
  if (within <= 0.0) return std::numeric_limits<double>::infinity();
  return (ss / static_cast<double>(n - 1)) / (within / static_cast<double>(n - 2));
}

bool f_test_accept(double f, std::size_t n, double alpha) {
  if (n < 3) {
    throw TooFewExamples("F test needs at least 3 examples, got " + std::to_string(n));
  }
  if (!(alpha > 0.0) || alpha > 1.0) {
    throw ConfigError("significance level must lie in (0, 1]");
  }
  if (std::isnan(f)) return false;
  if (std::isinf(f)) return true;
  return f_upper_tail(f, static_cast<double>(n - 1), static_cast<double>(n - 2)) < alpha;
}

namespace {

struct Scored {
  std::size_t candidate = std::numeric_limits<std::size_t>::max();
  double score = -std::numeric_limits<double>::infinity();

  bool found() const { return candidate != std::numeric_limits<std::size_t>::max(); }
};

void partition(const Dataset& ds, std::span<const std::size_t> cluster, const TestQuery& test,
               std::span<const Literal> path, std::vector<std::size_t>& yes, std::vector<std::size_t>& no) {
  yes.clear();
  no.clear();
  for (const std::size_t id : cluster) {
    (test.passes(ds[id], path) ? yes : no).push_back(id);
  }
}

Scored scan(const Dataset& ds, std::span<const std::size_t> cluster, std::span<const TestQuery> candidates,
            std::size_t begin, std::size_t end, std::span<const Literal> path, const DistanceSpec& spec,
            const SplitSearch& search) {
  Scored best;
  std::vector<std::size_t> yes;
  std::vector<std::size_t> no;
  const std::size_t min_side = std::max<std::size_t>(search.min_leaf, 1);
  for (std::size_t i = begin; i < end; ++i) {
    partition(ds, cluster, candidates[i], path, yes, no);
    if (yes.size() < min_side || no.size() < min_side) continue;
    const Prototype py = prototype(ds, yes, spec);
    const Prototype pn = prototype(ds, no, spec);
    const auto inter = try_distance(py.mean, pn.mean, spec);
    if (!inter) continue;
    const double score = score_of(*inter, yes.size(), no.size(), search.mode);
    if (score > best.score) best = Scored{i, score};
  }
  return best;
}

}  // namespace

std::optional<SplitChoice> best_split(const Dataset& ds, std::span<const std::size_t> cluster,
                                      std::span<const TestQuery> candidates,
                                      std::span<const Literal> path, const DistanceSpec& spec,
                                      const SplitSearch& search) {
  if (candidates.empty() || cluster.empty()) return std::nullopt;
  const std::size_t jobs = std::clamp<std::size_t>(search.jobs, 1, candidates.size());
  Scored best;
  if (jobs == 1) {
    best = scan(ds, cluster, candidates, 0, candidates.size(), path, spec, search);
  } else {
    std::vector<Scored> partial(jobs);
    std::vector<std::thread> workers;
    const std::size_t chunk = (candidates.size() + jobs - 1) / jobs;
    for (std::size_t j = 0; j < jobs; ++j) {
      const std::size_t begin = std::min(candidates.size(), j * chunk);
      const std::size_t end = std::min(candidates.size(), begin + chunk);
      workers.emplace_back([&, j, begin, end] {
        partial[j] = scan(ds, cluster, candidates, begin, end, path, spec, search);
      });
    }
    for (std::thread& w : workers) w.join();
    for (const Scored& s : partial) {
      if (s.found() && s.score > best.score) best = s;
    }
  }
  if (!best.found()) return std::nullopt;

  SplitChoice choice{candidates[best.candidate], best.candidate, {}, {}, {}};
  partition(ds, cluster, choice.test, path, choice.yes, choice.no);
  choice.stats = score_split(ds, choice.yes, choice.no, spec, search.mode);
  return choice;
}

namespace {

class Builder {
 public:
  Builder(const Dataset& ds, const InduceConfig& config, const DistanceSpec& spec)
      : ds_(ds), config_(config), spec_(spec) {}

  std::size_t build(std::vector<std::size_t> cluster, const PathContext& context, std::size_t depth,
                    std::size_t parent) {
    const std::size_t index = nodes_.size();
    nodes_.emplace_back();
    {
      TreeNode& node = nodes_.back();
      node.parent = parent;
      node.depth = depth;
      node.origin = index;
      node.prototype = prototype(ds_, cluster, spec_);
      node.cluster = cluster;
    }

    const std::size_t n = cluster.size();
    if (n < 3 || n < 2 * config_.min_leaf) return index;
    if (config_.max_depth && depth >= *config_.max_depth) return index;

    const std::vector<TestQuery> candidates =
        generate_candidates(context, config_.templates, ds_, cluster, config_.candidates);
    const SplitSearch search{config_.split_score, config_.min_leaf, config_.jobs};
    std::optional<SplitChoice> choice = best_split(ds_, cluster, candidates, context.literals, spec_, search);
    if (!choice) return index;

    const std::size_t informative = informative_count(ds_, cluster, spec_);
    if (informative < 3 || !f_test_accept(choice->stats.f, informative, config_.f_alpha)) return index;

    const PathContext yes_context = context.extended(choice->test, config_.templates);
    nodes_[index].test = choice->test;
    nodes_[index].stats = choice->stats;
    const std::size_t yes = build(std::move(choice->yes), yes_context, depth + 1, index);
    const std::size_t no = build(std::move(choice->no), context, depth + 1, index);
    nodes_[index].yes = yes;
    nodes_[index].no = no;
    return index;
  }

  std::vector<TreeNode> take() { return std::move(nodes_); }

 private:
  const Dataset& ds_;
  const InduceConfig& config_;
  const DistanceSpec& spec_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

ClusteringTree induce_tree(const Dataset& ds, std::span<const std::size_t> train_ids,
                           const InduceConfig& config) {
  if (train_ids.empty()) {
    throw EmptyCluster("cannot induce a tree from zero training examples");
  }
  if (!(config.f_alpha > 0.0) || config.f_alpha > 1.0) {
    throw ConfigError("f_alpha must lie in (0, 1]");
  }
  if (config.min_leaf < 1) {
    throw ConfigError("min_leaf must be at least 1");
  }
  if (config.distance.size() == 0) {
    throw ConfigError("induction needs a distance specification");
  }
  const DistanceSpec spec = config.distance.frozen() ? config.distance : config.distance.frozen_on(ds, train_ids);

  std::vector<std::size_t> root(train_ids.begin(), train_ids.end());
  std::sort(root.begin(), root.end());
  root.erase(std::unique(root.begin(), root.end()), root.end());

  Builder builder(ds, config, spec);
  builder.build(std::move(root), PathContext{}, 0, kNoNode);

  TreeSettings settings;
  settings.split_score = std::string(to_string(config.split_score));
  settings.f_alpha = config.f_alpha;
  settings.min_leaf = config.min_leaf;
  settings.max_depth = config.max_depth;
  settings.max_literals = config.candidates.max_literals;
  settings.seed = config.seed;
  return ClusteringTree(ds.schema(), spec, config.templates, settings, builder.take());
}

}  // namespace pct
