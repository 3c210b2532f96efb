#include "pct/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include <json.hpp>

#include "pct/error.hpp"
#include "pct/rng.hpp"

namespace pct {

using nlohmann::ordered_json;

std::string_view to_string(EvalMode mode) {
  return mode == EvalMode::supervised ? "supervised" : "unsupervised";
}

EvalMode eval_mode_from_string(std::string_view text) {
  if (text == "supervised") return EvalMode::supervised;
  if (text == "unsupervised") return EvalMode::unsupervised;
  throw ConfigError("unknown mode '" + std::string(text) + "' (expected supervised or unsupervised)");
}

// ---------------------------------------------------------------------------
// Labels
// ---------------------------------------------------------------------------

namespace {

bool labelable(const Attribute& a) {
  return a.kind != AttributeKind::ignored && a.role != AttributeRole::key;
}

LeafLabels node_labels(const Dataset& ds, std::span<const std::size_t> members) {
  const Schema& schema = ds.schema();
  LeafLabels l;
  l.value.assign(schema.size(), kMissing);
  l.support.assign(schema.size(), 0);
  for (std::size_t a = 0; a < schema.size(); ++a) {
    const Attribute& attr = schema[a];
    if (!labelable(attr)) continue;
    if (attr.is_nominal_like()) {
      std::vector<std::size_t> counts(attr.values.size(), 0);
      for (const std::size_t id : members) {
        const double v = ds[id].values[a];
        if (is_missing(v)) continue;
        ++counts[static_cast<std::size_t>(v)];
        ++l.support[a];
      }
      if (l.support[a] > 0) {
        const auto best = std::max_element(counts.begin(), counts.end());
        l.value[a] = static_cast<double>(best - counts.begin());
      }
    } else {
      double sum = 0.0;
      for (const std::size_t id : members) {
        const double v = ds[id].values[a];
        if (is_missing(v)) continue;
        sum += v;
        ++l.support[a];
      }
      if (l.support[a] > 0) l.value[a] = sum / static_cast<double>(l.support[a]);
    }
  }
  return l;
}

}  // namespace

ClusteringTree assign_leaf_labels(const ClusteringTree& tree, const Dataset& ds,
                                  std::span<const std::size_t> labeled_ids) {
  if (labeled_ids.empty()) {
    throw ConfigError("leaf labeling needs at least one labeled example");
  }
  std::vector<std::size_t> labeled(labeled_ids.begin(), labeled_ids.end());
  std::sort(labeled.begin(), labeled.end());
  const auto cls = ds.schema().class_index();

  std::vector<std::optional<LeafLabels>> labels(tree.size());
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const TreeNode& node = tree.node(i);
    std::vector<std::size_t> members;
    std::set_intersection(node.cluster.begin(), node.cluster.end(), labeled.begin(), labeled.end(),
                          std::back_inserter(members));
    LeafLabels l = node_labels(ds, members);
    if (node.parent != kNoNode) {
      const LeafLabels& up = *labels[node.parent];
      for (std::size_t a = 0; a < l.value.size(); ++a) {
        if (l.support[a] == 0) l.value[a] = up.value[a];
      }
    }
    if (cls && !is_missing(l.value[*cls])) l.majority_class = l.value[*cls];
    labels[i] = std::move(l);
  }
  return tree.with_labels(std::move(labels));
}

Prediction predict(const ClusteringTree& tree, const Example& e) {
  const std::size_t leaf = tree.sort(e);
  return Prediction{leaf, tree.node(leaf).labels, tree.node(leaf).prototype};
}

// ---------------------------------------------------------------------------
// Distances
// ---------------------------------------------------------------------------

DistanceSpec default_distance(const Schema& schema, EvalMode mode) {
  std::vector<std::size_t> dims;
  if (mode == EvalMode::supervised) {
    const auto cls = schema.class_index();
    if (!cls) throw ConfigError("supervised mode needs a class attribute");
    dims.push_back(*cls);
  } else {
    for (std::size_t a = 0; a < schema.size(); ++a) {
      const AttributeRole role = schema[a].role;
      if ((role == AttributeRole::descriptive || role == AttributeRole::target) &&
          schema[a].kind == AttributeKind::numeric) {
        dims.push_back(a);
      }
    }
    if (dims.empty()) throw ConfigError("no numeric descriptive attribute available for the distance");
  }
  return DistanceSpec(schema, std::move(dims));
}

DistanceSpec without_class(const DistanceSpec& spec, const Schema& schema) {
  const auto cls = schema.class_index();
  if (!cls) return spec;
  const auto dims = spec.dims();
  if (std::find(dims.begin(), dims.end(), *cls) == dims.end()) return spec;
  std::vector<std::size_t> kept;
  std::vector<double> weights;
  for (std::size_t d = 0; d < dims.size(); ++d) {
    if (dims[d] == *cls) continue;
    kept.push_back(dims[d]);
    weights.push_back(spec.weights()[d]);
  }
  if (kept.empty()) {
    throw ConfigError("the distance uses only the class attribute, which unsupervised mode excludes");
  }
  return DistanceSpec(schema, std::move(kept), std::move(weights), spec.normalization());
}

// ---------------------------------------------------------------------------
// Folds
// ---------------------------------------------------------------------------

std::vector<std::vector<std::size_t>> make_folds(const Dataset& ds, std::size_t k, std::uint64_t seed,
                                                 std::optional<std::size_t> stratify_by) {
  const std::size_t n = ds.size();
  if (k < 2 || k > n) {
    throw ConfigError("fold count " + std::to_string(k) + " must lie in [2, " + std::to_string(n) + "]");
  }
  Rng rng(seed);
  std::vector<std::vector<std::size_t>> folds(k);
  std::size_t next = 0;
  auto deal = [&](std::vector<std::size_t> group) {
    rng.shuffle(std::span<std::size_t>(group));
    for (const std::size_t id : group) {
      folds[next % k].push_back(id);
      ++next;
    }
  };
  if (stratify_by) {
    std::map<double, std::vector<std::size_t>> strata;
    std::vector<std::size_t> unknown;
    for (std::size_t id = 0; id < n; ++id) {
      const double v = ds[id].values[*stratify_by];
      (is_missing(v) ? unknown : strata[v]).push_back(id);
    }
    for (auto& [value, group] : strata) deal(std::move(group));
    deal(std::move(unknown));
  } else {
    deal(ds.ids());
  }
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

// ---------------------------------------------------------------------------
// Scoring
// ---------------------------------------------------------------------------

namespace {

std::size_t bin_of(double v, std::span<const double> boundaries) {
  return static_cast<std::size_t>(std::upper_bound(boundaries.begin(), boundaries.end(), v) -
                                  boundaries.begin());
}

std::optional<double> mean_of(const std::vector<std::optional<double>>& xs) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& x : xs) {
    if (!x) continue;
    sum += *x;
    ++count;
  }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

std::optional<double> test_re(const ClusteringTree& tree, const Dataset& ds,
                              std::span<const std::size_t> test_ids) {
  std::vector<Prototype> predictions;
  for (const std::size_t id : test_ids) predictions.push_back(tree.node(tree.sort(ds[id])).prototype);
  try {
    return relative_error(ds, test_ids, predictions, tree.root().prototype, tree.distance());
  } catch (const REUndefined&) {
    return std::nullopt;
  }
}

}  // namespace

std::optional<double> classification_accuracy(const ClusteringTree& tree, const Dataset& ds,
                                              std::span<const std::size_t> test_ids,
                                              std::span<const double> class_boundaries,
                                              const Dataset* truth) {
  const auto cls = ds.schema().class_index();
  if (!cls) return std::nullopt;
  const Attribute& attr = ds.schema()[*cls];
  const bool binned = !attr.is_nominal_like();
  if (binned && class_boundaries.empty()) return std::nullopt;
  const Dataset& actuals = truth ? *truth : ds;
  std::size_t total = 0;
  std::size_t correct = 0;
  for (const std::size_t id : test_ids) {
    const double actual = actuals[id].values[*cls];
    if (is_missing(actual)) continue;
    ++total;
    const TreeNode& leaf = tree.node(tree.sort(ds[id]));
    if (!leaf.labels || !leaf.labels->majority_class) continue;
    const double predicted = *leaf.labels->majority_class;
    const bool hit = binned ? bin_of(predicted, class_boundaries) == bin_of(actual, class_boundaries)
                            : predicted == actual;
    if (hit) ++correct;
  }
  if (total == 0) return std::nullopt;
  return static_cast<double>(correct) / static_cast<double>(total);
}

std::optional<double> AttributeScore::accuracy() const {
  if (evaluated == 0) return std::nullopt;
  return static_cast<double>(correct) / static_cast<double>(evaluated);
}

std::optional<double> AttributeScore::default_accuracy() const {
  if (evaluated == 0) return std::nullopt;
  return static_cast<double>(default_correct) / static_cast<double>(evaluated);
}

std::optional<double> AttributeTable::mean_accuracy() const {
  std::vector<std::optional<double>> xs;
  for (const AttributeScore& r : rows) xs.push_back(r.accuracy());
  return mean_of(xs);
}

std::optional<double> AttributeTable::mean_default() const {
  std::vector<std::optional<double>> xs;
  for (const AttributeScore& r : rows) {
    if (r.accuracy()) xs.push_back(r.default_accuracy());
  }
  return mean_of(xs);
}

std::size_t AttributeTable::at_least_default() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const AttributeScore& r) {
    return r.evaluated > 0 && r.correct >= r.default_correct;
  }));
}

AttributeTable multi_attribute_report(const ClusteringTree& tree, const Dataset& ds,
                                      std::span<const std::size_t> test_ids) {
  const Schema& schema = ds.schema();
  const TreeNode& root = tree.root();
  if (!root.labels) throw ConfigError("attribute report needs a labeled tree");
  AttributeTable table;
  for (std::size_t a = 0; a < schema.size(); ++a) {
    const Attribute& attr = schema[a];
    if ((attr.role != AttributeRole::descriptive && attr.role != AttributeRole::target) || !attr.is_nominal_like()) {
      continue;
    }
    table.rows.push_back(AttributeScore{a, attr.name, 0, 0, 0});
  }
  for (const std::size_t id : test_ids) {
    const TreeNode& leaf = tree.node(tree.sort(ds[id]));
    for (AttributeScore& row : table.rows) {
      const double actual = ds[id].values[row.attribute];
      if (is_missing(actual)) continue;
      ++row.evaluated;
      if (leaf.labels && leaf.labels->value[row.attribute] == actual) ++row.correct;
      if (root.labels->value[row.attribute] == actual) ++row.default_correct;
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// Cross-validation
// ---------------------------------------------------------------------------

namespace {

void merge(AttributeTable& into, const AttributeTable& from) {
  if (into.rows.empty()) {
    into = from;
    return;
  }
  for (std::size_t r = 0; r < into.rows.size(); ++r) {
    into.rows[r].evaluated += from.rows[r].evaluated;
    into.rows[r].correct += from.rows[r].correct;
    into.rows[r].default_correct += from.rows[r].default_correct;
  }
}

std::string text_of(double v) { return format_number(v); }

std::vector<std::pair<std::string, std::string>> echo(const EvalConfig& c, const Dataset& ds,
                                                      const DistanceSpec& spec, QualityMeasure measure,
                                                      std::size_t k) {
  std::vector<std::pair<std::string, std::string>> out{
      {"mode", std::string(to_string(c.mode))},
      {"k", std::to_string(k)},
      {"distance", spec.to_string(ds.schema())},
      {"split_score", std::string(to_string(c.induce.split_score))},
      {"f_alpha", text_of(c.induce.f_alpha)},
      {"min_leaf", std::to_string(c.induce.min_leaf)},
      {"max_depth", c.induce.max_depth ? std::to_string(*c.induce.max_depth) : "none"},
      {"max_literals", std::to_string(c.induce.candidates.max_literals)},
      {"templates", std::to_string(c.induce.templates.size())},
      {"prune", c.prune ? "on" : "off"},
  };
  if (c.prune) {
    out.emplace_back("validation_fraction", text_of(c.validation_fraction));
    out.emplace_back("prune_measure", std::string(to_string(measure)));
    out.emplace_back("prune_ties", c.prune_ties ? "on" : "off");
  }
  out.emplace_back("seed", std::to_string(c.seed));
  return out;
}

}  // namespace

EvalReport crossvalidate(const Dataset& ds, const EvalConfig& config, const Dataset* truth) {
  if (truth && (truth->size() != ds.size() || !(truth->schema() == ds.schema()))) {
    throw ConfigError("reference dataset does not match the evaluated dataset");
  }
  const Schema& schema = ds.schema();
  const auto cls = schema.class_index();
  const std::size_t k = config.k == 0 ? ds.size() : config.k;

  DistanceSpec spec = config.induce.distance.size() == 0 ? default_distance(schema, config.mode)
                                                         : config.induce.distance;
  if (config.mode == EvalMode::unsupervised && config.strip_class) spec = without_class(spec, schema);

  const QualityMeasure measure = config.prune_measure.value_or(
      config.mode == EvalMode::supervised ? QualityMeasure::classification : QualityMeasure::clustering);
  if (config.prune && measure == QualityMeasure::classification && !cls) {
    throw ConfigError("classification pruning needs a class attribute");
  }

  const bool stratify = config.mode == EvalMode::supervised && cls.has_value();
  const auto folds = make_folds(ds, k, config.seed, stratify ? cls : std::nullopt);

  InduceConfig induce = config.induce;
  induce.distance = spec;
  if (config.jobs > 1) induce.jobs = 1;

  auto run_fold = [&](std::size_t f) {
    FoldResult r;
    r.fold = f;
    const std::vector<std::size_t>& test = folds[f];
    std::vector<std::size_t> train;
    for (std::size_t g = 0; g < folds.size(); ++g) {
      if (g != f) train.insert(train.end(), folds[g].begin(), folds[g].end());
    }
    std::sort(train.begin(), train.end());

    LearnSplit split{train, {}};
    if (config.prune) {
      const std::uint64_t s = derive_seed(config.seed, f + 1);
      split = config.stratified_validation && cls
                  ? split_learn_set(ds, train, config.validation_fraction, s, *cls)
                  : split_learn_set(train, config.validation_fraction, s);
    }
    r.train_size = split.train.size();
    r.validation_size = split.valid.size();
    r.test_size = test.size();

    const ClusteringTree grown = assign_leaf_labels(induce_tree(ds, split.train, induce), ds, split.train);
    r.nodes_unpruned = grown.size();
    r.accuracy_unpruned = classification_accuracy(grown, ds, test, config.class_boundaries, truth);
    r.re_unpruned = test_re(grown, ds, test);

    const ClusteringTree final_tree =
        config.prune ? prune(grown, ds, split.valid, measure, PruneOptions{config.prune_ties}) : grown;
    r.nodes = final_tree.size();
    r.accuracy = classification_accuracy(final_tree, ds, test, config.class_boundaries, truth);
    r.re = test_re(final_tree, ds, test);
    if (config.attribute_report) r.attributes = multi_attribute_report(final_tree, ds, test);
    return r;
  };

  std::vector<FoldResult> results(folds.size());
  const std::size_t workers = std::min(std::max<std::size_t>(config.jobs, 1), folds.size());
  if (workers == 1) {
    for (std::size_t f = 0; f < folds.size(); ++f) results[f] = run_fold(f);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(folds.size());
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t f = next++; f < folds.size(); f = next++) {
          try {
            results[f] = run_fold(f);
          } catch (...) {
            errors[f] = std::current_exception();
          }
        }
      });
    }
    for (std::thread& t : pool) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  EvalReport report;
  report.folds = folds.size();
  report.seed = config.seed;
  report.config = echo(config, ds, spec, measure, k);
  std::vector<std::optional<double>> acc;
  std::vector<std::optional<double>> acc_unpruned;
  std::vector<std::optional<double>> re;
  std::vector<std::optional<double>> re_unpruned;
  double nodes = 0.0;
  double nodes_unpruned = 0.0;
  for (const FoldResult& r : results) {
    acc.push_back(r.accuracy);
    acc_unpruned.push_back(r.accuracy_unpruned);
    re.push_back(r.re);
    re_unpruned.push_back(r.re_unpruned);
    nodes += static_cast<double>(r.nodes);
    nodes_unpruned += static_cast<double>(r.nodes_unpruned);
    if (config.attribute_report) merge(report.attributes, r.attributes);
  }
  report.accuracy = mean_of(acc);
  report.accuracy_unpruned = mean_of(acc_unpruned);
  report.re = mean_of(re);
  report.re_unpruned = mean_of(re_unpruned);
  report.mean_nodes = nodes / static_cast<double>(results.size());
  report.mean_nodes_unpruned = nodes_unpruned / static_cast<double>(results.size());
  report.fold_results = std::move(results);
  return report;
}

// ---------------------------------------------------------------------------
// Experiments
// ---------------------------------------------------------------------------

Dataset corrupt_missing(const Dataset& ds, const std::map<std::size_t, double>& keep_probability,
                        std::uint64_t seed) {
  for (const auto& [a, p] : keep_probability) {
    if (a >= ds.schema().size()) throw ConfigError("corruption target out of range");
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("keep probability must lie in [0, 1]");
  }
  Rng rng(seed);
  std::vector<std::vector<double>> values;
  values.reserve(ds.size());
  for (const Example& e : ds.examples()) {
    std::vector<double> row = e.values;
    for (const auto& [a, p] : keep_probability) {
      if (!(rng.uniform01() < p)) row[a] = kMissing;
    }
    values.push_back(std::move(row));
  }
  return with_values(ds, std::move(values));
}

MissingInfoTable missing_info_experiment(const Dataset& ds, std::span<const double> levels,
                                         std::span<const NamedDistance> specs, const EvalConfig& base,
                                         bool corrupt_class) {
  const auto cls = ds.schema().class_index();
  std::vector<std::size_t> targets;
  for (const NamedDistance& s : specs) {
    for (const std::size_t d : s.spec.dims()) {
      if (!corrupt_class && cls && d == *cls) continue;
      if (std::find(targets.begin(), targets.end(), d) == targets.end()) targets.push_back(d);
    }
  }
  std::sort(targets.begin(), targets.end());

  MissingInfoTable table;
  table.levels.assign(levels.begin(), levels.end());
  for (const NamedDistance& s : specs) table.specs.push_back(s.name);
  for (std::size_t li = 0; li < levels.size(); ++li) {
    std::map<std::size_t, double> keep;
    for (const std::size_t d : targets) keep[d] = levels[li];
    const Dataset corrupted = corrupt_missing(ds, keep, derive_seed(base.seed, 1000 + li));
    std::vector<std::optional<double>> row;
    std::vector<double> nodes;
    for (const NamedDistance& s : specs) {
      EvalConfig cfg = base;
      cfg.induce.distance = s.spec;
      cfg.strip_class = false;
      const EvalReport report = crossvalidate(corrupted, cfg, &ds);
      row.push_back(report.accuracy);
      nodes.push_back(report.mean_nodes);
    }
    table.accuracy.push_back(std::move(row));
    table.mean_nodes.push_back(std::move(nodes));
  }
  return table;
}

Dataset missing_info_surrogate(std::size_t n, std::uint64_t seed) {
  std::vector<Attribute> attributes;
  attributes.push_back(Attribute{"activity", AttributeKind::numeric, AttributeRole::class_label, {}, false});
  attributes.push_back(Attribute{"z1", AttributeKind::numeric, AttributeRole::target, {}, false});
  attributes.push_back(Attribute{"z2", AttributeKind::numeric, AttributeRole::target, {}, false});
  for (int s = 1; s <= 4; ++s) {
    attributes.push_back(
        Attribute{"s" + std::to_string(s), AttributeKind::numeric, AttributeRole::descriptive, {}, false});
  }
  Schema schema(std::move(attributes));

  Rng rng(seed);
  auto gaussian = [&] {
    const double u1 = 1.0 - rng.uniform01();
    const double u2 = rng.uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  };
  std::vector<Example> examples;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = rng.uniform01() < 0.5 ? 0.0 : 1.0;
    Example e;
    const double sign = 2.0 * c - 1.0;
    e.values = {sign + 0.75 * gaussian(), sign + 0.75 * gaussian(), -sign + 0.75 * gaussian()};
    for (int s = 0; s < 4; ++s) e.values.push_back(rng.uniform01() < 0.85 ? c : 1.0 - c);
    examples.push_back(std::move(e));
  }
  return Dataset(std::move(schema), std::move(examples));
}

std::vector<SweepRow> pruning_sweep(const Dataset& ds, std::span<const double> fractions,
                                    const EvalConfig& base) {
  std::vector<SweepRow> rows;
  for (const double f : fractions) {
    EvalConfig cfg = base;
    cfg.prune = true;
    cfg.validation_fraction = f;
    rows.push_back(SweepRow{f, crossvalidate(ds, cfg)});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

namespace {

std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string fixed(const std::optional<double>& v, int digits = 4) { return v ? fixed(*v, digits) : "-"; }

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

std::string pad_right(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

ordered_json opt(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json attribute_json(const AttributeTable& t) {
  ordered_json rows = ordered_json::array();
  for (const AttributeScore& r : t.rows) {
    rows.push_back(ordered_json{{"attribute", r.name},
                                {"evaluated", r.evaluated},
                                {"accuracy", opt(r.accuracy())},
                                {"default", opt(r.default_accuracy())}});
  }
  return ordered_json{{"rows", std::move(rows)},
                      {"mean_accuracy", opt(t.mean_accuracy())},
                      {"mean_default", opt(t.mean_default())},
                      {"at_least_default", t.at_least_default()}};
}

ordered_json report_json(const EvalReport& r) {
  ordered_json config = ordered_json::object();
  for (const auto& [key, value] : r.config) config[key] = value;
  ordered_json folds = ordered_json::array();
  for (const FoldResult& f : r.fold_results) {
    folds.push_back(ordered_json{{"fold", f.fold},
                                 {"train", f.train_size},
                                 {"validation", f.validation_size},
                                 {"test", f.test_size},
                                 {"nodes_unpruned", f.nodes_unpruned},
                                 {"nodes", f.nodes},
                                 {"accuracy_unpruned", opt(f.accuracy_unpruned)},
                                 {"accuracy", opt(f.accuracy)},
                                 {"re_unpruned", opt(f.re_unpruned)},
                                 {"re", opt(f.re)}});
  }
  ordered_json out{{"folds", r.folds},
                   {"seed", r.seed},
                   {"accuracy", opt(r.accuracy)},
                   {"accuracy_unpruned", opt(r.accuracy_unpruned)},
                   {"re", opt(r.re)},
                   {"re_unpruned", opt(r.re_unpruned)},
                   {"mean_nodes", r.mean_nodes},
                   {"mean_nodes_unpruned", r.mean_nodes_unpruned},
                   {"config", std::move(config)},
                   {"fold_results", std::move(folds)}};
  if (!r.attributes.rows.empty()) out["attributes"] = attribute_json(r.attributes);
  return out;
}

}  // namespace

std::string render_text(const AttributeTable& table) {
  std::size_t width = 9;
  for (const AttributeScore& r : table.rows) width = std::max(width, r.name.size());
  std::string out = pad_right("attribute", width) + "   default       acc.\n";
  for (const AttributeScore& r : table.rows) {
    out += pad_right(r.name, width) + pad(fixed(r.default_accuracy()), 10) + pad(fixed(r.accuracy()), 11) + "\n";
  }
  out += pad_right("mean", width) + pad(fixed(table.mean_default()), 10) + pad(fixed(table.mean_accuracy()), 11) +
         "\n";
  out += "attributes at or above default: " + std::to_string(table.at_least_default()) + " of " +
         std::to_string(table.rows.size()) + "\n";
  return out;
}

std::string render_text(const EvalReport& report, const Schema& schema) {
  (void)schema;
  std::string out;
  for (const auto& [key, value] : report.config) out += pad_right(key, 20) + value + "\n";
  out += "\n";
  out += pad_right("folds", 20) + std::to_string(report.folds) + "\n";
  out += pad_right("accuracy", 20) + fixed(report.accuracy) + "  (unpruned " + fixed(report.accuracy_unpruned) + ")\n";
  out += pad_right("relative error", 20) + fixed(report.re) + "  (unpruned " + fixed(report.re_unpruned) + ")\n";
  out += pad_right("mean nodes", 20) + fixed(report.mean_nodes, 2) + "  (unpruned " +
         fixed(report.mean_nodes_unpruned, 2) + ")\n\n";
  out += "fold  train  valid  test  nodes  unpruned  accuracy  unpruned        RE  unpruned\n";
  for (const FoldResult& f : report.fold_results) {
    out += pad(std::to_string(f.fold), 4) + pad(std::to_string(f.train_size), 7) +
           pad(std::to_string(f.validation_size), 7) + pad(std::to_string(f.test_size), 6) +
           pad(std::to_string(f.nodes), 7) + pad(std::to_string(f.nodes_unpruned), 10) +
           pad(fixed(f.accuracy), 10) + pad(fixed(f.accuracy_unpruned), 10) + pad(fixed(f.re), 10) +
           pad(fixed(f.re_unpruned), 10) + "\n";
  }
  if (!report.attributes.rows.empty()) out += "\n" + render_text(report.attributes);
  return out;
}

std::string render_json(const EvalReport& report) { return report_json(report).dump(2) + "\n"; }

std::string render_text(const MissingInfoTable& table) {
  std::string out = "available";
  for (const std::string& s : table.specs) out += pad(s, std::max<std::size_t>(s.size(), 8) + 2);
  out += "\n";
  for (std::size_t li = 0; li < table.levels.size(); ++li) {
    out += pad_right(fixed(table.levels[li] * 100.0, 0) + "%", 9);
    for (std::size_t si = 0; si < table.specs.size(); ++si) {
      out += pad(fixed(table.accuracy[li][si], 3), std::max<std::size_t>(table.specs[si].size(), 8) + 2);
    }
    out += "\n";
  }
  return out;
}

std::string render_json(const MissingInfoTable& table) {
  ordered_json rows = ordered_json::array();
  for (std::size_t li = 0; li < table.levels.size(); ++li) {
    ordered_json cells = ordered_json::object();
    ordered_json nodes = ordered_json::object();
    for (std::size_t si = 0; si < table.specs.size(); ++si) {
      cells[table.specs[si]] = opt(table.accuracy[li][si]);
      nodes[table.specs[si]] = table.mean_nodes[li][si];
    }
    rows.push_back(ordered_json{{"level", table.levels[li]}, {"accuracy", std::move(cells)}, {"mean_nodes", std::move(nodes)}});
  }
  return ordered_json{{"experiment", "missing_info"}, {"specs", table.specs}, {"rows", std::move(rows)}}.dump(2) + "\n";
}

std::string render_text(std::span<const SweepRow> rows) {
  std::string out = "validation  acc.before  acc.after  nodes.before  nodes.after\n";
  for (const SweepRow& r : rows) {
    out += pad(fixed(r.validation_fraction, 2), 10) + pad(fixed(r.report.accuracy_unpruned), 12) +
           pad(fixed(r.report.accuracy), 11) + pad(fixed(r.report.mean_nodes_unpruned, 2), 14) +
           pad(fixed(r.report.mean_nodes, 2), 13) + "\n";
  }
  return out;
}

std::string render_json(std::span<const SweepRow> rows) {
  ordered_json out = ordered_json::array();
  for (const SweepRow& r : rows) {
    out.push_back(ordered_json{{"validation_fraction", r.validation_fraction}, {"report", report_json(r.report)}});
  }
  return ordered_json{{"experiment", "pruning_sweep"}, {"rows", std::move(out)}}.dump(2) + "\n";
}

}  // namespace pct
