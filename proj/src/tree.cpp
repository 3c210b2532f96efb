#include "pct/tree.hpp"

#include <cmath>
#include <functional>

#include <json.hpp>

#include "pct/error.hpp"

namespace pct {

using nlohmann::ordered_json;

ClusteringTree::ClusteringTree(Schema schema, DistanceSpec distance, TemplateSet templates,
                               TreeSettings settings, std::vector<TreeNode> nodes)
    : schema_(std::move(schema)),
      distance_(std::move(distance)),
      templates_(std::move(templates)),
      settings_(std::move(settings)),
      nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw ConfigError("a tree needs a root node");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const TreeNode& n = nodes_[i];
    if (n.is_leaf()) continue;
    if (n.yes >= nodes_.size() || n.no >= nodes_.size() || n.yes <= i || n.no <= i) {
      throw DataError("tree node " + std::to_string(i) + " has invalid children");
    }
  }
}

std::size_t ClusteringTree::leaf_count() const {
  std::size_t count = 0;
  for (const TreeNode& n : nodes_) count += n.is_leaf() ? 1 : 0;
  return count;
}

std::vector<std::size_t> ClusteringTree::leaves() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].is_leaf()) out.push_back(i);
  }
  return out;
}

std::size_t ClusteringTree::sort(const Example& e, std::span<const char> collapsed) const {
  std::vector<Literal> path;
  std::size_t at = 0;
  while (!nodes_[at].is_leaf() && (collapsed.empty() || !collapsed[at])) {
    const TestQuery& test = *nodes_[at].test;
    if (test.passes(e, path)) {
      const auto lits = test.literals();
      path.insert(path.end(), lits.begin(), lits.end());
      at = nodes_[at].yes;
    } else {
      at = nodes_[at].no;
    }
  }
  return at;
}

std::vector<Literal> ClusteringTree::path_literals(std::size_t node) const {
  std::vector<std::size_t> chain;
  for (std::size_t at = node; nodes_[at].parent != kNoNode; at = nodes_[at].parent) chain.push_back(at);
  std::vector<Literal> out;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    const TreeNode& parent = nodes_[nodes_[*it].parent];
    if (parent.yes != *it) continue;
    const auto lits = parent.test->literals();
    out.insert(out.end(), lits.begin(), lits.end());
  }
  return out;
}

ClusteringTree ClusteringTree::contracted(std::span<const char> collapsed) const {
  std::vector<TreeNode> out;
  std::function<std::size_t(std::size_t, std::size_t)> copy = [&](std::size_t at, std::size_t parent) {
    const std::size_t index = out.size();
    out.push_back(nodes_[at]);
    out[index].parent = parent;
    if (out[index].is_leaf()) return index;
    if (!collapsed.empty() && collapsed[at]) {
      out[index].test.reset();
      out[index].stats.reset();
      out[index].yes = kNoNode;
      out[index].no = kNoNode;
      return index;
    }
    const std::size_t yes = copy(nodes_[at].yes, index);
    const std::size_t no = copy(nodes_[at].no, index);
    out[index].yes = yes;
    out[index].no = no;
    return index;
  };
  copy(0, kNoNode);
  return ClusteringTree(schema_, distance_, templates_, settings_, std::move(out));
}

ClusteringTree ClusteringTree::with_labels(std::vector<std::optional<LeafLabels>> labels) const {
  if (labels.size() != nodes_.size()) throw ConfigError("label count does not match node count");
  ClusteringTree out = *this;
  for (std::size_t i = 0; i < labels.size(); ++i) out.nodes_[i].labels = std::move(labels[i]);
  return out;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace {

ordered_json number_json(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from(const ordered_json& j) {
  if (j.is_null()) return kMissing;
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    throw DataError("tree file: bad number '" + s + "'");
  }
  return j.get<double>();
}

ordered_json vector_json(std::span<const double> values) {
  ordered_json out = ordered_json::array();
  for (const double v : values) out.push_back(number_json(v));
  return out;
}

std::vector<double> vector_from(const ordered_json& j) {
  std::vector<double> out;
  for (const auto& v : j) out.push_back(number_from(v));
  return out;
}

ordered_json prototype_json(const Prototype& p) {
  return ordered_json{{"mean", vector_json(p.mean)}, {"support", p.support}};
}

Prototype prototype_from(const ordered_json& j) {
  return Prototype{vector_from(j.at("mean")), j.at("support").get<std::vector<std::size_t>>()};
}

ordered_json test_json(const TestQuery& test, const Schema& schema) {
  ordered_json out;
  if (test.is_attribute_test()) {
    const AttributeTest& a = test.attribute_test();
    out["kind"] = "attribute";
    out["attribute"] = schema[a.attribute].name;
    out["op"] = a.op == Comparator::less_equal ? "<=" : "=";
    out["value"] = a.value;
  } else {
    out["kind"] = "conjunction";
    out["literals"] = to_string(test.literals());
  }
  out["text"] = test.to_string(schema);
  return out;
}

TestQuery test_from(const ordered_json& j, const Schema& schema) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "attribute") {
    const std::string op = j.at("op").get<std::string>();
    if (op != "<=" && op != "=") throw DataError("tree file: bad comparator '" + op + "'");
    return AttributeTest{schema.require(j.at("attribute").get<std::string>()),
                         op == "<=" ? Comparator::less_equal : Comparator::equal,
                         j.at("value").get<double>()};
  }
  if (kind == "conjunction") {
    return ConjunctiveTest{parse_conjunction(j.at("literals").get<std::string>())};
  }
  throw DataError("tree file: unknown test kind '" + kind + "'");
}

ordered_json stats_json(const SplitStatistics& s) {
  return ordered_json{{"n", s.n},
                      {"n_yes", s.n_left},
                      {"n_no", s.n_right},
                      {"ss", number_json(s.ss)},
                      {"ss_yes", number_json(s.ss_left)},
                      {"ss_no", number_json(s.ss_right)},
                      {"f", number_json(s.f)},
                      {"inter_distance", number_json(s.inter_distance)},
                      {"score", number_json(s.score)},
                      {"prototype_yes", prototype_json(s.proto_left)},
                      {"prototype_no", prototype_json(s.proto_right)}};
}

SplitStatistics stats_from(const ordered_json& j) {
  SplitStatistics s;
  s.n = j.at("n").get<std::size_t>();
  s.n_left = j.at("n_yes").get<std::size_t>();
  s.n_right = j.at("n_no").get<std::size_t>();
  s.ss = number_from(j.at("ss"));
  s.ss_left = number_from(j.at("ss_yes"));
  s.ss_right = number_from(j.at("ss_no"));
  s.f = number_from(j.at("f"));
  s.inter_distance = number_from(j.at("inter_distance"));
  s.score = number_from(j.at("score"));
  s.proto_left = prototype_from(j.at("prototype_yes"));
  s.proto_right = prototype_from(j.at("prototype_no"));
  return s;
}

ordered_json labels_json(const LeafLabels& l, const Schema& schema) {
  ordered_json display = ordered_json::object();
  for (std::size_t a = 0; a < l.value.size(); ++a) {
    if (!is_missing(l.value[a])) display[schema[a].name] = schema[a].format(l.value[a]);
  }
  ordered_json out{{"value", vector_json(l.value)}, {"support", l.support}};
  out["majority_class"] = l.majority_class ? number_json(*l.majority_class) : ordered_json(nullptr);
  out["display"] = std::move(display);
  return out;
}

LeafLabels labels_from(const ordered_json& j) {
  LeafLabels l;
  l.value = vector_from(j.at("value"));
  l.support = j.at("support").get<std::vector<std::size_t>>();
  if (!j.at("majority_class").is_null()) l.majority_class = number_from(j.at("majority_class"));
  return l;
}

}  // namespace

std::string to_json(const ClusteringTree& tree) {
  const Schema& schema = tree.schema();
  ordered_json doc;
  doc["format"] = "pct-tree/1";

  ordered_json attributes = ordered_json::array();
  for (const Attribute& a : schema) {
    ordered_json attr{{"name", a.name}, {"kind", to_string(a.kind)}, {"role", to_string(a.role)}};
    if (!a.values.empty()) attr["values"] = a.values;
    if (a.encoded) attr["encoded"] = true;
    attributes.push_back(std::move(attr));
  }
  doc["schema"] = std::move(attributes);

  const DistanceSpec& spec = tree.distance();
  ordered_json dims = ordered_json::array();
  for (const std::size_t d : spec.dims()) dims.push_back(schema[d].name);
  doc["distance"] = ordered_json{{"dims", std::move(dims)},
                                 {"weights", vector_json(spec.weights())},
                                 {"norm", to_string(spec.normalization())},
                                 {"scales", vector_json(spec.scales())}};

  ordered_json templates = ordered_json::array();
  for (const Template& t : tree.templates().templates) templates.push_back("test " + t.to_string());
  doc["templates"] = std::move(templates);

  const TreeSettings& s = tree.settings();
  doc["settings"] = ordered_json{{"split_score", s.split_score},
                                 {"f_alpha", s.f_alpha},
                                 {"min_leaf", s.min_leaf},
                                 {"max_depth", s.max_depth ? ordered_json(*s.max_depth) : ordered_json(nullptr)},
                                 {"max_literals", s.max_literals},
                                 {"seed", s.seed}};
  doc["node_count"] = tree.size();
  doc["leaf_count"] = tree.leaf_count();

  ordered_json nodes = ordered_json::array();
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const TreeNode& n = tree.node(i);
    ordered_json node{{"id", i}, {"origin", n.origin}, {"depth", n.depth}, {"size", n.cluster.size()}};
    if (n.is_leaf()) {
      node["test"] = nullptr;
    } else {
      node["test"] = test_json(*n.test, schema);
      node["yes"] = n.yes;
      node["no"] = n.no;
    }
    node["cluster"] = n.cluster;
    node["prototype"] = prototype_json(n.prototype);
    if (n.stats) node["stats"] = stats_json(*n.stats);
    if (n.labels) node["labels"] = labels_json(*n.labels, schema);
    nodes.push_back(std::move(node));
  }
  doc["nodes"] = std::move(nodes);
  return doc.dump(2) + "\n";
}

ClusteringTree tree_from_json(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("tree file is not valid JSON: ") + e.what());
  }
  try {
    if (doc.value("format", "") != "pct-tree/1") throw DataError("tree file: unsupported format");

    std::vector<Attribute> attributes;
    for (const auto& a : doc.at("schema")) {
      Attribute attr;
      attr.name = a.at("name").get<std::string>();
      attr.kind = attribute_kind_from_string(a.at("kind").get<std::string>());
      attr.role = attribute_role_from_string(a.at("role").get<std::string>());
      if (a.contains("values")) attr.values = a.at("values").get<std::vector<std::string>>();
      attr.encoded = a.value("encoded", false);
      attributes.push_back(std::move(attr));
    }
    Schema schema(std::move(attributes));

    const auto& d = doc.at("distance");
    std::vector<std::size_t> dims;
    for (const auto& name : d.at("dims")) dims.push_back(schema.require(name.get<std::string>()));
    DistanceSpec spec(schema, std::move(dims), vector_from(d.at("weights")),
                      normalization_from_string(d.at("norm").get<std::string>()));
    spec = spec.with_scales(vector_from(d.at("scales")));

    std::string template_text;
    for (const auto& t : doc.at("templates")) template_text += t.get<std::string>() + "\n";
    TemplateSet templates = parse_template_spec(template_text);

    TreeSettings settings;
    const auto& s = doc.at("settings");
    settings.split_score = s.at("split_score").get<std::string>();
    settings.f_alpha = s.at("f_alpha").get<double>();
    settings.min_leaf = s.at("min_leaf").get<std::size_t>();
    if (!s.at("max_depth").is_null()) settings.max_depth = s.at("max_depth").get<std::size_t>();
    settings.max_literals = s.at("max_literals").get<std::size_t>();
    settings.seed = s.at("seed").get<std::uint64_t>();

    std::vector<TreeNode> nodes;
    for (const auto& j : doc.at("nodes")) {
      TreeNode n;
      n.origin = j.at("origin").get<std::size_t>();
      n.depth = j.at("depth").get<std::size_t>();
      if (!j.at("test").is_null()) {
        n.test = test_from(j.at("test"), schema);
        n.yes = j.at("yes").get<std::size_t>();
        n.no = j.at("no").get<std::size_t>();
      }
      n.cluster = j.at("cluster").get<std::vector<std::size_t>>();
      n.prototype = prototype_from(j.at("prototype"));
      if (j.contains("stats")) n.stats = stats_from(j.at("stats"));
      if (j.contains("labels")) n.labels = labels_from(j.at("labels"));
      nodes.push_back(std::move(n));
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].is_leaf()) continue;
      if (nodes[i].yes < nodes.size()) nodes[nodes[i].yes].parent = i;
      if (nodes[i].no < nodes.size()) nodes[nodes[i].no].parent = i;
    }
    return ClusteringTree(std::move(schema), std::move(spec), std::move(templates), std::move(settings),
                          std::move(nodes));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("tree file: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// ASCII rendering
// ---------------------------------------------------------------------------

namespace {

std::string leaf_text(const ClusteringTree& tree, const TreeNode& n) {
  std::string out = "[" + std::to_string(n.cluster.size()) + " examples";
  const auto cls = tree.schema().class_index();
  if (n.labels && n.labels->majority_class && cls) {
    out += ", class " + tree.schema()[*cls].format(*n.labels->majority_class);
  }
  return out + "]";
}

void render(const ClusteringTree& tree, std::size_t at, const std::string& indent, std::string& out) {
  const TreeNode& n = tree.node(at);
  if (n.is_leaf()) {
    out += leaf_text(tree, n) + "\n";
    return;
  }
  out += n.test->to_string(tree.schema()) + " ?\n";
  out += indent + "+--yes: ";
  render(tree, n.yes, indent + "|       ", out);
  out += indent + "+--no:  ";
  render(tree, n.no, indent + "        ", out);
}

}  // namespace

std::string render_ascii(const ClusteringTree& tree) {
  std::string out;
  render(tree, 0, "", out);
  return out;
}

}  // namespace pct
