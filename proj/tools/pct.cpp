// Command-line front end: train, predict, prune, xval and experiment.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pct/dataset.hpp"
#include "pct/error.hpp"
#include "pct/eval.hpp"
#include "pct/induction.hpp"
#include "pct/logic.hpp"
#include "pct/metrics.hpp"
#include "pct/pruning.hpp"
#include "pct/tree.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

struct Options {
  std::string data;
  std::string interpretations;
  std::string mapping;
  std::string templates;
  std::string class_name;
  std::vector<std::string> nominal;
  std::vector<std::string> ignore;
  std::vector<std::string> targets;
  std::string encode = "on";
  std::string distance;
  std::vector<std::string> dims;
  std::vector<double> weights;
  std::string norm = "none";
  std::string score = "inter_distance";
  double alpha = 0.01;
  std::size_t min_leaf = 2;
  std::size_t max_depth = 0;
  std::size_t max_literals = 2;
  std::string mode = "unsupervised";
  double validation_fraction = 0.2;
  std::string prune = "on";
  bool prune_ties = false;
  std::string prune_measure = "auto";
  bool stratify_validation = false;
  std::vector<double> class_boundaries;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::size_t k = 10;
  std::string tree;
  std::string out;
  std::vector<std::string> emit{"text", "structured"};
  // experiments
  std::string experiment;
  std::vector<double> fractions{0.1, 0.2, 0.3, 0.4, 0.5};
  std::vector<double> levels{1.0, 0.5, 0.25, 0.1};
  std::vector<std::string> specs;
  std::size_t surrogate = 0;
  bool exempt_class = false;
};

bool on_off(const std::string& value, const std::string& flag) {
  if (value == "on") return true;
  if (value == "off") return false;
  throw pct::ConfigError("--" + flag + " expects on or off, got '" + value + "'");
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

pct::Dataset load_dataset(const Options& o) {
  if (o.data.empty() == o.interpretations.empty()) {
    throw pct::ConfigError("give exactly one data source: --data or --interpretations");
  }
  pct::Dataset ds;
  if (!o.data.empty()) {
    pct::CsvOptions csv;
    for (const std::string& n : o.nominal) csv.nominal.insert(n);
    ds = pct::parse_csv(pct::read_file(o.data), std::nullopt, csv);
  } else {
    pct::AttributeMapping mapping;
    if (!o.mapping.empty()) mapping = pct::parse_attribute_mapping(pct::read_file(o.mapping));
    ds = pct::parse_interpretations(pct::read_file(o.interpretations), mapping);
  }
  if (!o.class_name.empty()) ds = pct::with_class(ds, o.class_name);
  if (!o.targets.empty()) ds = pct::with_targets(ds, o.targets);
  if (!o.ignore.empty()) ds = pct::with_ignored(ds, o.ignore);
  if (on_off(o.encode, "encode")) ds = pct::encode_nominals(ds);
  if (ds.empty()) throw pct::DataError("dataset has no examples");
  return ds;
}

/// Parses data for an existing tree: columns are read against the tree's
/// schema with encoded attributes decoded back to nominal.
pct::Dataset load_for_tree(const Options& o, const pct::ClusteringTree& tree) {
  if (o.data.empty()) {
    if (!o.interpretations.empty()) {
      pct::AttributeMapping mapping;
      if (!o.mapping.empty()) mapping = pct::parse_attribute_mapping(pct::read_file(o.mapping));
      pct::Dataset ds = pct::encode_nominals(pct::parse_interpretations(pct::read_file(o.interpretations), mapping));
      if (!(ds.schema() == tree.schema())) {
        throw pct::DataError("interpretations do not match the tree's schema");
      }
      return ds;
    }
    throw pct::ConfigError("give the data to evaluate with --data or --interpretations");
  }
  std::vector<pct::Attribute> attributes(tree.schema().begin(), tree.schema().end());
  for (pct::Attribute& a : attributes) {
    if (a.encoded) {
      a.kind = pct::AttributeKind::nominal;
      a.encoded = false;
    }
  }
  pct::Dataset ds = pct::parse_csv(pct::read_file(o.data), pct::Schema(std::move(attributes)));
  return pct::encode_nominals(ds);
}

pct::DistanceSpec distance_of(const Options& o, const pct::Schema& schema, pct::EvalMode mode) {
  if (!o.distance.empty()) {
    if (!o.dims.empty()) throw pct::ConfigError("use either --distance or --dims, not both");
    return pct::DistanceSpec::parse(o.distance, schema);
  }
  const pct::Normalization norm = pct::normalization_from_string(o.norm);
  if (o.dims.empty()) {
    const pct::DistanceSpec d = pct::default_distance(schema, mode);
    std::vector<std::size_t> dims(d.dims().begin(), d.dims().end());
    if (!o.weights.empty() && o.weights.size() != dims.size()) {
      throw pct::ConfigError("--weights needs one weight per default dimension (" + std::to_string(dims.size()) + ")");
    }
    return pct::DistanceSpec(schema, std::move(dims), o.weights, norm);
  }
  std::vector<std::size_t> dims;
  for (const std::string& name : o.dims) dims.push_back(schema.require(name));
  return pct::DistanceSpec(schema, std::move(dims), o.weights, norm);
}

pct::EvalConfig eval_config(const Options& o, const pct::Dataset& ds) {
  pct::EvalConfig c;
  c.mode = pct::eval_mode_from_string(o.mode);
  c.induce.split_score = pct::split_score_from_string(o.score);
  c.induce.f_alpha = o.alpha;
  c.induce.min_leaf = o.min_leaf;
  if (o.max_depth > 0) c.induce.max_depth = o.max_depth;
  c.induce.candidates.max_literals = o.max_literals;
  if (!o.templates.empty()) c.induce.templates = pct::parse_template_spec(pct::read_file(o.templates));
  c.induce.distance = distance_of(o, ds.schema(), c.mode);
  c.induce.seed = o.seed;
  c.induce.jobs = o.jobs;
  c.k = o.k;
  c.prune = on_off(o.prune, "prune");
  c.validation_fraction = o.validation_fraction;
  c.prune_ties = o.prune_ties;
  if (o.prune_measure != "auto") c.prune_measure = pct::quality_measure_from_string(o.prune_measure);
  c.stratified_validation = o.stratify_validation;
  c.class_boundaries = o.class_boundaries;
  c.seed = o.seed;
  c.jobs = o.jobs;
  if (c.k == 1) throw pct::ConfigError("--k must be 0 (leave-one-out) or at least 2");
  if (c.k > ds.size()) {
    throw pct::ConfigError("--k " + std::to_string(c.k) + " exceeds the " + std::to_string(ds.size()) + " examples");
  }
  return c;
}

bool emits(const Options& o, const std::string& kind) {
  for (const std::string& e : o.emit) {
    if (e != "text" && e != "structured") throw pct::ConfigError("--emit accepts text and structured, got '" + e + "'");
  }
  return std::find(o.emit.begin(), o.emit.end(), kind) != o.emit.end();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw pct::DataError("cannot write " + path);
  f << content;
  if (!f) throw pct::DataError("error writing " + path);
}

/// Writes the text and structured forms to <out>.txt / <out>.json, or the
/// text form to stdout when no --out is given.
void emit_report(const Options& o, const std::string& text, const std::string& json) {
  const bool want_text = emits(o, "text");
  const bool want_json = emits(o, "structured");
  if (o.out.empty()) {
    if (want_text) std::cout << text;
    if (want_json && !want_text) std::cout << json;
    return;
  }
  if (want_text) write_file(o.out + ".txt", text);
  if (want_json) write_file(o.out + ".json", json);
}

double training_re(const pct::ClusteringTree& tree, const pct::Dataset& ds, std::span<const std::size_t> ids) {
  std::vector<pct::Prototype> predictions;
  for (const std::size_t id : ids) predictions.push_back(tree.node(tree.sort(ds[id])).prototype);
  return pct::relative_error(ds, ids, predictions, tree.root().prototype, tree.distance());
}

pct::QualityMeasure measure_of(const pct::EvalConfig& c) {
  return c.prune_measure.value_or(c.mode == pct::EvalMode::supervised ? pct::QualityMeasure::classification
                                                                        : pct::QualityMeasure::clustering);
}

std::string tree_summary(const pct::ClusteringTree& tree, const pct::Dataset& ds,
                         std::span<const std::size_t> train) {
  std::ostringstream s;
  s << "nodes " << tree.size() << "\n";
  s << "leaves " << tree.leaf_count() << "\n";
  s << "training examples " << train.size() << "\n";
  try {
    s << "training RE " << pct::format_number(training_re(tree, ds, train)) << "\n";
  } catch (const pct::REUndefined&) {
    s << "training RE undefined\n";
  }
  s << "\n" << pct::render_ascii(tree);
  return s.str();
}

int cmd_train(const Options& o) {
  const pct::Dataset ds = load_dataset(o);
  pct::EvalConfig c = eval_config(o, ds);
  pct::DistanceSpec spec = c.induce.distance;
  if (c.mode == pct::EvalMode::unsupervised) spec = pct::without_class(spec, ds.schema());
  c.induce.distance = spec;

  const std::vector<std::size_t> all = ds.ids();
  pct::LearnSplit split{all, {}};
  if (c.prune) {
    const auto cls = ds.schema().class_index();
    split = c.stratified_validation && cls ? pct::split_learn_set(ds, all, c.validation_fraction, c.seed, *cls)
                                           : pct::split_learn_set(all, c.validation_fraction, c.seed);
  }
  pct::ClusteringTree tree = pct::induce_tree(ds, split.train, c.induce);
  tree = pct::assign_leaf_labels(tree, ds, split.train);
  if (c.prune) tree = pct::prune(tree, ds, split.valid, measure_of(c), pct::PruneOptions{c.prune_ties});

  const std::string path = o.out.empty() ? "tree.json" : o.out;
  write_file(path, pct::to_json(tree));
  std::cout << tree_summary(tree, ds, split.train);
  return kExitOk;
}

int cmd_predict(const Options& o) {
  if (o.tree.empty()) throw pct::ConfigError("predict needs --tree");
  const pct::ClusteringTree tree = pct::tree_from_json(pct::read_file(o.tree));
  const pct::Dataset ds = load_for_tree(o, tree);
  const pct::Schema& schema = tree.schema();
  const auto cls = schema.class_index();

  std::string csv = "id,leaf";
  if (cls) csv += ",predicted_" + schema[*cls].name;
  for (const std::size_t d : tree.distance().dims()) csv += ",prototype_" + schema[d].name;
  csv += "\n";
  for (const pct::Example& e : ds.examples()) {
    const pct::Prediction p = pct::predict(tree, e);
    csv += std::to_string(e.id) + "," + std::to_string(p.leaf);
    if (cls) {
      csv += ",";
      if (p.labels && p.labels->majority_class) csv += schema[*cls].format(*p.labels->majority_class);
      else csv += "?";
    }
    for (const double m : p.prototype.mean) csv += "," + pct::format_number(m);
    csv += "\n";
  }
  if (o.out.empty()) {
    std::cout << csv;
  } else {
    write_file(o.out, csv);
  }
  if (cls) {
    if (const auto acc = pct::classification_accuracy(tree, ds, ds.ids(), o.class_boundaries)) {
      std::cerr << "accuracy " << pct::format_number(*acc) << "\n";
    }
  }
  return kExitOk;
}

int cmd_prune(const Options& o) {
  if (o.tree.empty()) throw pct::ConfigError("prune needs --tree");
  const pct::ClusteringTree tree = pct::tree_from_json(pct::read_file(o.tree));
  const pct::Dataset ds = load_for_tree(o, tree);
  pct::EvalConfig c;
  c.mode = pct::eval_mode_from_string(o.mode);
  if (o.prune_measure != "auto") c.prune_measure = pct::quality_measure_from_string(o.prune_measure);
  const std::vector<std::size_t> valid = ds.ids();
  const pct::QualityMeasure measure = measure_of(c);
  const pct::ClusteringTree pruned = pct::prune(tree, ds, valid, measure, pct::PruneOptions{o.prune_ties});
  const std::string path = o.out.empty() ? "pruned.json" : o.out;
  write_file(path, pct::to_json(pruned));
  std::cout << "measure " << pct::to_string(measure) << "\n";
  std::cout << "quality before " << pct::format_number(pct::tree_quality(tree, ds, valid, measure)) << "\n";
  std::cout << "quality after " << pct::format_number(pct::tree_quality(pruned, ds, valid, measure)) << "\n";
  std::cout << "nodes " << tree.size() << " -> " << pruned.size() << "\n";
  return kExitOk;
}

int cmd_xval(const Options& o) {
  const pct::Dataset ds = load_dataset(o);
  const pct::EvalConfig c = eval_config(o, ds);
  const pct::EvalReport report = pct::crossvalidate(ds, c);
  emit_report(o, pct::render_text(report, ds.schema()), pct::render_json(report));
  return kExitOk;
}

int cmd_experiment(const Options& o) {
  if (o.experiment == "pruning_sweep") {
    const pct::Dataset ds = load_dataset(o);
    const pct::EvalConfig c = eval_config(o, ds);
    const auto rows = pct::pruning_sweep(ds, o.fractions, c);
    emit_report(o, pct::render_text(rows), pct::render_json(rows));
    return kExitOk;
  }
  if (o.experiment == "multi_attribute") {
    const pct::Dataset ds = load_dataset(o);
    pct::EvalConfig c = eval_config(o, ds);
    c.attribute_report = true;
    const pct::EvalReport report = pct::crossvalidate(ds, c);
    emit_report(o, pct::render_text(report, ds.schema()), pct::render_json(report));
    return kExitOk;
  }
  if (o.experiment == "missing_info") {
    const pct::Dataset ds = o.surrogate > 0 ? pct::missing_info_surrogate(o.surrogate, o.seed) : load_dataset(o);
    pct::EvalConfig c = eval_config(o, ds);
    if (o.surrogate > 0 && c.class_boundaries.empty()) c.class_boundaries = {0.0};
    std::vector<pct::NamedDistance> specs;
    if (o.specs.empty()) {
      if (o.surrogate == 0) throw pct::ConfigError("missing_info needs at least one --spec name=<distance>");
      specs.push_back({"class-only", pct::DistanceSpec::parse("dims=activity", ds.schema())});
      specs.push_back({"three-attr", pct::DistanceSpec::parse("dims=activity,z1,z2", ds.schema())});
    }
    for (const std::string& s : o.specs) {
      const auto eq = s.find('=');
      if (eq == std::string::npos || eq == 0) throw pct::ConfigError("--spec expects name=<distance>, got '" + s + "'");
      specs.push_back({s.substr(0, eq), pct::DistanceSpec::parse(s.substr(eq + 1), ds.schema())});
    }
    const pct::MissingInfoTable table = pct::missing_info_experiment(ds, o.levels, specs, c, !o.exempt_class);
    emit_report(o, pct::render_text(table), pct::render_json(table));
    return kExitOk;
  }
  throw pct::ConfigError("unknown experiment '" + o.experiment +
                         "' (expected pruning_sweep, missing_info or multi_attribute)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Top-down induction of clustering trees"};
  app.set_config("--config", "", "Read options from a key=value file; flags override it");
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--data", o.data, "CSV file with a header line; '?' marks a missing cell");
  app.add_option("--interpretations", o.interpretations, "Interpretation file of begin(model(ID)) ... end(model(ID)) blocks");
  app.add_option("--mapping", o.mapping, "Attribute-mapping file lifting facts into attributes");
  app.add_option("--templates", o.templates, "Template file declaring conjunctive node tests");
  app.add_option("--class", o.class_name, "Class attribute");
  app.add_option("--nominal", o.nominal, "Columns read as nominal even when numeric ('*' for all)")->delimiter(',');
  app.add_option("--targets", o.targets, "Columns used in distances and labels but never tested")->delimiter(',');
  app.add_option("--ignore", o.ignore, "Columns to ignore")->delimiter(',');
  app.add_option("--encode", o.encode, "Encode nominal attributes as numeric codes (on|off)")->capture_default_str();
  app.add_option("--distance", o.distance, "Distance as 'dims=a,b weights=1,1 norm=none'");
  app.add_option("--dims", o.dims, "Distance dimensions (default: numeric descriptive attributes, or the class when supervised)")->delimiter(',');
  app.add_option("--weights", o.weights, "Per-dimension distance weights")->delimiter(',');
  app.add_option("--norm", o.norm, "Normalization: none, minmax or zscore")->capture_default_str();
  app.add_option("--score", o.score, "Split score: inter_distance or weighted_between_ss")->capture_default_str();
  app.add_option("--alpha", o.alpha, "Significance level of the F-test stopping criterion")->capture_default_str();
  app.add_option("--min-leaf", o.min_leaf, "Minimum examples per side of a split")->capture_default_str();
  app.add_option("--max-depth", o.max_depth, "Maximum tree depth (0 = unlimited)")->capture_default_str();
  app.add_option("--max-literals", o.max_literals, "Maximum literals in one node test")->capture_default_str();
  app.add_option("--mode", o.mode, "supervised or unsupervised")->capture_default_str();
  app.add_option("--validation-fraction", o.validation_fraction, "Share of the learning set held out for pruning")->capture_default_str();
  app.add_option("--prune", o.prune, "Validation-set pruning (on|off)")->capture_default_str();
  app.add_flag("--prune-ties", o.prune_ties, "Also prune when quality stays equal");
  app.add_option("--prune-measure", o.prune_measure, "auto, classification or clustering")->capture_default_str();
  app.add_flag("--stratify-validation", o.stratify_validation, "Draw the validation set per class");
  app.add_option("--class-boundaries", o.class_boundaries, "Bin boundaries for accuracy on a numeric class")->delimiter(',');
  app.add_option("--seed", o.seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--jobs", o.jobs, "Worker threads; output does not depend on it")->capture_default_str();
  app.add_option("--out", o.out, "Output path (tree file, or report prefix for .txt/.json)");
  app.add_option("--emit", o.emit, "Report forms: text, structured")->delimiter(',')->capture_default_str();

  CLI::App* train = app.add_subcommand("train", "Induce (and optionally prune) a tree; writes the tree file");
  CLI::App* predict = app.add_subcommand("predict", "Sort examples through a saved tree");
  predict->add_option("--tree", o.tree, "Tree file")->required();
  CLI::App* prune = app.add_subcommand("prune", "Prune a saved tree on validation data");
  prune->add_option("--tree", o.tree, "Tree file")->required();
  CLI::App* xval = app.add_subcommand("xval", "Cross-validate");
  xval->add_option("--k", o.k, "Folds (0 = leave-one-out)")->capture_default_str();
  CLI::App* experiment = app.add_subcommand("experiment", "Run pruning_sweep, missing_info or multi_attribute");
  experiment->add_option("name", o.experiment, "Experiment name")->required();
  experiment->add_option("--k", o.k, "Folds (0 = leave-one-out)")->capture_default_str();
  experiment->add_option("--fractions", o.fractions, "Validation fractions for pruning_sweep")->delimiter(',');
  experiment->add_option("--levels", o.levels, "Availability levels for missing_info")->delimiter(',');
  experiment->add_option("--spec", o.specs, "Named distance name=<distance> for missing_info (repeatable)");
  experiment->add_option("--surrogate", o.surrogate, "Generate a synthetic dataset of this size for missing_info");
  experiment->add_flag("--exempt-class", o.exempt_class, "Do not remove class values in missing_info");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (train->parsed()) return cmd_train(o);
    if (predict->parsed()) return cmd_predict(o);
    if (prune->parsed()) return cmd_prune(o);
    if (xval->parsed()) return cmd_xval(o);
    if (experiment->parsed()) return cmd_experiment(o);
    return kExitConfig;
  } catch (const pct::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const pct::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
