#include "pct/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "pct/error.hpp"
#include "term_syntax.hpp"

namespace pct {

std::optional<double> parse_number(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
    text.remove_prefix(1);
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  if (!text.empty() && text.front() == '+') {
    text.remove_prefix(1);
  }
  if (text.empty()) {
    return std::nullopt;
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::string format_number(double v) {
  if (is_missing(v)) {
    return "?";
  }
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

// ---------------------------------------------------------------------------
// Schema
// ---------------------------------------------------------------------------

std::string_view to_string(AttributeKind kind) {
  switch (kind) {
    case AttributeKind::numeric:
      return "numeric";
    case AttributeKind::nominal:
      return "nominal";
    case AttributeKind::ignored:
      return "ignored";
  }
  return "?";
}

std::string_view to_string(AttributeRole role) {
  switch (role) {
    case AttributeRole::descriptive:
      return "descriptive";
    case AttributeRole::class_label:
      return "class";
    case AttributeRole::target:
      return "target";
    case AttributeRole::key:
      return "key";
  }
  return "?";
}

AttributeKind attribute_kind_from_string(std::string_view text) {
  if (text == "numeric") return AttributeKind::numeric;
  if (text == "nominal") return AttributeKind::nominal;
  if (text == "ignored") return AttributeKind::ignored;
  throw DataError("unknown attribute kind '" + std::string(text) + "'");
}

AttributeRole attribute_role_from_string(std::string_view text) {
  if (text == "descriptive") return AttributeRole::descriptive;
  if (text == "class") return AttributeRole::class_label;
  if (text == "key") return AttributeRole::key;
  if (text == "target") return AttributeRole::target;
  throw DataError("unknown attribute role '" + std::string(text) + "'");
}

std::string Attribute::format(double v) const {
  if (is_missing(v)) {
    return "?";
  }
  if (is_nominal_like()) {
    const auto code = static_cast<std::size_t>(v);
    if (static_cast<double>(code) == v && code < values.size()) {
      return values[code];
    }
  }
  return format_number(v);
}

std::optional<std::size_t> Attribute::code_of(std::string_view value) const {
  const auto it = std::find(values.begin(), values.end(), value);
  if (it == values.end()) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - values.begin());
}

Schema::Schema(std::vector<Attribute> attributes) : attributes_(std::move(attributes)) {
  std::unordered_set<std::string> names;
  bool has_class = false;
  for (const Attribute& a : attributes_) {
    if (a.name.empty()) {
      throw ConfigError("attribute with empty name");
    }
    if (!names.insert(a.name).second) {
      throw ConfigError("duplicate attribute name '" + a.name + "'");
    }
    if (a.kind == AttributeKind::nominal || a.encoded) {
      if (a.values.empty()) {
        throw ConfigError("nominal attribute '" + a.name + "' has no values");
      }
      std::unordered_set<std::string> seen(a.values.begin(), a.values.end());
      if (seen.size() != a.values.size()) {
        throw ConfigError("nominal attribute '" + a.name + "' has duplicate values");
      }
    }
    if (a.role == AttributeRole::class_label) {
      if (has_class) {
        throw ConfigError("more than one class attribute");
      }
      has_class = true;
    }
  }
}

std::optional<std::size_t> Schema::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    if (attributes_[i].name == name) {
      return i;
    }
  }
  return std::nullopt;
}

std::size_t Schema::require(std::string_view name) const {
  if (auto i = index_of(name)) {
    return *i;
  }
  throw ConfigError("unknown attribute '" + std::string(name) + "'");
}

std::optional<std::size_t> Schema::class_index() const {
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    if (attributes_[i].role == AttributeRole::class_label) {
      return i;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Facts
// ---------------------------------------------------------------------------

Constant Constant::identifier(std::string text) { return Constant{std::move(text), std::nullopt}; }

Constant Constant::numeric(double value) { return Constant{format_number(value), value}; }

Constant Constant::from_token(std::string_view token) {
  if (auto v = parse_number(token)) {
    return Constant{std::string(token), *v};
  }
  return identifier(std::string(token));
}

bool Constant::operator==(const Constant& other) const {
  if (number.has_value() != other.number.has_value()) {
    return false;
  }
  return number ? *number == *other.number : text == other.text;
}

bool Constant::operator<(const Constant& other) const {
  if (number && other.number) {
    return *number < *other.number;
  }
  if (number.has_value() != other.number.has_value()) {
    return number.has_value();
  }
  return text < other.text;
}

std::string GroundFact::to_string() const {
  std::string out = functor;
  if (!args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i > 0) out += ',';
      out += args[i].text;
    }
    out += ')';
  }
  return out;
}

namespace {

std::string signature(std::string_view functor, std::size_t arity) {
  std::string key(functor);
  key += '/';
  key += std::to_string(arity);
  return key;
}

}  // namespace

Interpretation::Interpretation(std::vector<GroundFact> facts) : facts_(std::move(facts)) {
  for (std::size_t i = 0; i < facts_.size(); ++i) {
    index_[signature(facts_[i].functor, facts_[i].arity())].push_back(i);
  }
}

std::span<const std::size_t> Interpretation::lookup(std::string_view functor,
                                                     std::size_t arity) const {
  const auto it = index_.find(signature(functor, arity));
  if (it == index_.end()) {
    return {};
  }
  return it->second;
}

bool Interpretation::contains(const GroundFact& fact) const {
  for (std::size_t i : lookup(fact.functor, fact.arity())) {
    if (facts_[i] == fact) {
      return true;
    }
  }
  return false;
}

std::shared_ptr<const Interpretation> empty_interpretation() {
  static const auto empty = std::make_shared<const Interpretation>();
  return empty;
}

// ---------------------------------------------------------------------------
// Dataset
// ---------------------------------------------------------------------------

Dataset::Dataset(Schema schema, std::vector<Example> examples)
    : schema_(std::move(schema)), examples_(std::move(examples)) {
  for (std::size_t i = 0; i < examples_.size(); ++i) {
    Example& e = examples_[i];
    e.id = i;
    if (e.values.size() != schema_.size()) {
      throw DataError("example " + std::to_string(i) + " has " + std::to_string(e.values.size()) +
                      " values, schema has " + std::to_string(schema_.size()));
    }
    if (!e.facts) {
      e.facts = empty_interpretation();
    }
    if (!(e.weight > 0.0)) {
      throw DataError("example " + std::to_string(i) + " has non-positive weight");
    }
    for (std::size_t a = 0; a < schema_.size(); ++a) {
      const Attribute& attr = schema_[a];
      const double v = e.values[a];
      if (is_missing(v) || !attr.is_nominal_like()) {
        continue;
      }
      if (v < 0 || v != std::floor(v) || v >= static_cast<double>(attr.values.size())) {
        throw DataError("example " + std::to_string(i) + ": invalid code " + format_number(v) +
                        " for nominal attribute '" + attr.name + "'");
      }
    }
  }
}

std::vector<std::size_t> Dataset::ids() const {
  std::vector<std::size_t> out(examples_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

namespace {

struct CsvRow {
  std::vector<std::string> cells;
  int line = 0;
};

// RFC-4180: quoted fields may contain commas, doubled quotes and newlines.
std::vector<CsvRow> split_csv(std::string_view text) {
  std::vector<CsvRow> rows;
  CsvRow row;
  std::string cell;
  bool in_quotes = false;
  bool row_has_content = false;
  int line = 1;
  row.line = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        cell += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        row_has_content = true;
        break;
      case ',':
        row.cells.push_back(std::move(cell));
        cell.clear();
        row_has_content = true;
        break;
      case '\r':
        break;
      case '\n':
        if (row_has_content || !cell.empty()) {
          row.cells.push_back(std::move(cell));
          rows.push_back(std::move(row));
        }
        cell.clear();
        row = CsvRow{};
        row_has_content = false;
        ++line;
        row.line = line;
        break;
      default:
        cell += c;
        row_has_content = true;
    }
  }
  if (in_quotes) {
    throw DataError("unterminated quoted field starting on line " + std::to_string(row.line));
  }
  if (row_has_content || !cell.empty()) {
    row.cells.push_back(std::move(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
  return std::string(s.substr(b, e - b));
}

bool is_missing_token(std::string_view s) { return s == "?"; }

}  // namespace

Dataset parse_csv(std::string_view text, const std::optional<Schema>& schema,
                  const CsvOptions& options) {
  std::vector<CsvRow> rows = split_csv(text);
  if (rows.empty()) {
    throw DataError("CSV input has no header line");
  }
  std::vector<std::string> header;
  for (const std::string& c : rows.front().cells) header.push_back(trim(c));
  const std::size_t width = header.size();
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].cells.size() != width) {
      throw DataError("ragged row on line " + std::to_string(rows[r].line) + ": expected " +
                      std::to_string(width) + " cells, found " +
                      std::to_string(rows[r].cells.size()));
    }
    for (std::string& c : rows[r].cells) c = trim(c);
  }

  std::vector<Attribute> attributes;
  if (schema) {
    if (schema->size() != width) {
      throw DataError("CSV header has " + std::to_string(width) + " columns, schema has " +
                      std::to_string(schema->size()));
    }
    for (std::size_t c = 0; c < width; ++c) {
      if ((*schema)[c].name != header[c]) {
        throw DataError("CSV header column " + std::to_string(c + 1) + " is '" + header[c] +
                        "', schema expects '" + (*schema)[c].name + "'");
      }
    }
    attributes.assign(schema->begin(), schema->end());
  } else {
    const bool all_nominal = options.nominal.contains("*");
    for (std::size_t c = 0; c < width; ++c) {
      Attribute attr;
      attr.name = header[c];
      bool numeric = true;
      for (std::size_t r = 1; r < rows.size() && numeric; ++r) {
        const std::string& cell = rows[r].cells[c];
        if (!is_missing_token(cell) && !parse_number(cell)) numeric = false;
      }
      const bool forced = all_nominal || options.nominal.contains(attr.name);
      if (numeric && !forced) {
        attr.kind = AttributeKind::numeric;
      } else {
        attr.kind = AttributeKind::nominal;
        for (std::size_t r = 1; r < rows.size(); ++r) {
          const std::string& cell = rows[r].cells[c];
          if (!is_missing_token(cell) &&
              std::find(attr.values.begin(), attr.values.end(), cell) == attr.values.end()) {
            attr.values.push_back(cell);
          }
        }
        if (numeric) {
          std::stable_sort(attr.values.begin(), attr.values.end(),
                           [](const std::string& a, const std::string& b) {
                             return *parse_number(a) < *parse_number(b);
                           });
        }
        if (attr.values.empty()) {
          // A column with only missing cells carries no information.
          attr.kind = AttributeKind::numeric;
        }
      }
      attributes.push_back(std::move(attr));
    }
  }
  Schema final_schema(std::move(attributes));

  std::vector<Example> examples;
  examples.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    Example e;
    e.values.resize(width, kMissing);
    for (std::size_t c = 0; c < width; ++c) {
      const std::string& cell = rows[r].cells[c];
      const Attribute& attr = final_schema[c];
      if (is_missing_token(cell) || attr.kind == AttributeKind::ignored) {
        e.values[c] = is_missing_token(cell) ? kMissing : parse_number(cell).value_or(kMissing);
        continue;
      }
      if (attr.kind == AttributeKind::nominal) {
        const auto code = attr.code_of(cell);
        if (!code) {
          throw DataError("unknown value '" + cell + "' for nominal attribute '" + attr.name +
                          "' on line " + std::to_string(rows[r].line));
        }
        e.values[c] = static_cast<double>(*code);
      } else if (attr.encoded) {
        // Encoded columns are written as labels; accept either label or code.
        if (const auto code = attr.code_of(cell)) {
          e.values[c] = static_cast<double>(*code);
        } else if (const auto v = parse_number(cell)) {
          e.values[c] = *v;
        } else {
          throw DataError("unknown value '" + cell + "' for attribute '" + attr.name +
                          "' on line " + std::to_string(rows[r].line));
        }
      } else {
        const auto v = parse_number(cell);
        if (!v) {
          throw DataError("unparseable numeric cell '" + cell + "' for attribute '" + attr.name +
                          "' on line " + std::to_string(rows[r].line));
        }
        e.values[c] = *v;
      }
    }
    examples.push_back(std::move(e));
  }
  return Dataset(std::move(final_schema), std::move(examples));
}

namespace {

std::string quote_csv(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos && trim(cell) == cell) {
    return cell;
  }
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string to_csv(const Dataset& ds) {
  std::ostringstream out;
  const Schema& schema = ds.schema();
  for (std::size_t c = 0; c < schema.size(); ++c) {
    if (c > 0) out << ',';
    out << quote_csv(schema[c].name);
  }
  out << '\n';
  for (const Example& e : ds.examples()) {
    for (std::size_t c = 0; c < schema.size(); ++c) {
      if (c > 0) out << ',';
      out << quote_csv(schema[c].format(e.values[c]));
    }
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Interpretations
// ---------------------------------------------------------------------------

AttributeMapping parse_attribute_mapping(std::string_view text) {
  AttributeMapping mapping;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  std::unordered_set<std::string> names;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto pct = line.find('%'); pct != std::string::npos) line.erase(pct);
    std::istringstream words(line);
    std::vector<std::string> tok;
    for (std::string w; words >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    auto fail = [&](const std::string& what) -> void {
      throw ParseError("attribute mapping: " + what, line_no, 1);
    };
    if (tok.size() != 5 && tok.size() != 7) fail("expected '<role> <name> from <functor>/<arity> <kind> [arg <k>]'");
    LiftedAttribute lifted;
    if (tok[0] == "attribute") {
      lifted.role = AttributeRole::descriptive;
    } else if (tok[0] == "class") {
      lifted.role = AttributeRole::class_label;
    } else if (tok[0] == "target") {
      lifted.role = AttributeRole::target;
    } else if (tok[0] == "key") {
      lifted.role = AttributeRole::key;
    } else {
      fail("unknown declaration '" + tok[0] + "'");
    }
    lifted.name = tok[1];
    if (tok[2] != "from") fail("expected 'from'");
    const auto slash = tok[3].rfind('/');
    if (slash == std::string::npos || slash == 0) fail("expected <functor>/<arity>");
    lifted.functor = tok[3].substr(0, slash);
    const auto arity = parse_number(tok[3].substr(slash + 1));
    if (!arity || *arity < 1 || *arity != std::floor(*arity)) fail("arity must be a positive integer");
    lifted.arity = static_cast<std::size_t>(*arity);
    if (tok[4] == "numeric") {
      lifted.kind = AttributeKind::numeric;
    } else if (tok[4] == "nominal") {
      lifted.kind = AttributeKind::nominal;
    } else {
      fail("kind must be numeric or nominal");
    }
    lifted.argument = lifted.arity - 1;
    if (tok.size() == 7) {
      if (tok[5] != "arg") fail("expected 'arg'");
      const auto k = parse_number(tok[6]);
      if (!k || *k < 1 || *k > static_cast<double>(lifted.arity) || *k != std::floor(*k)) {
        fail("argument index out of range");
      }
      lifted.argument = static_cast<std::size_t>(*k) - 1;
    }
    if (!names.insert(lifted.name).second) fail("duplicate attribute '" + lifted.name + "'");
    mapping.attributes.push_back(std::move(lifted));
  }
  return mapping;
}

namespace {

using detail::Lexer;
using detail::RawTerm;
using detail::TokenKind;

GroundFact to_ground_fact(const RawTerm& term) {
  if (term.kind != TokenKind::identifier) {
    throw ParseError("fact must start with a predicate name, found '" + term.text + "'", term.line,
                     term.column);
  }
  GroundFact fact;
  fact.functor = term.text;
  for (const RawTerm& arg : term.args) {
    if (arg.kind == TokenKind::variable) {
      throw ParseError("fact " + term.text + " contains variable " + arg.text, arg.line,
                       arg.column);
    }
    if (arg.compound) {
      throw ParseError("nested term in fact " + term.text + " is not supported", arg.line,
                       arg.column);
    }
    fact.args.push_back(Constant::from_token(arg.text));
  }
  return fact;
}

// Returns the ID of a `begin(model(ID))` / `end(model(ID))` term, if it is one.
std::optional<std::string> block_marker(const RawTerm& term, std::string_view which) {
  if (term.text != which || term.args.size() != 1) return std::nullopt;
  const RawTerm& model = term.args[0];
  if (model.text != "model" || model.args.size() != 1 || model.args[0].compound) {
    throw ParseError(std::string(which) + " expects model(ID)", term.line, term.column);
  }
  return model.args[0].text;
}

}  // namespace

Dataset parse_interpretations(std::string_view text, const AttributeMapping& mapping) {
  std::vector<Attribute> attributes;
  Attribute model_attr;
  model_attr.name = "model";
  model_attr.kind = AttributeKind::nominal;
  model_attr.role = AttributeRole::key;
  attributes.push_back(model_attr);
  for (const LiftedAttribute& lifted : mapping.attributes) {
    if (lifted.name == "model") {
      throw ConfigError("attribute name 'model' is reserved for block IDs");
    }
    Attribute attr;
    attr.name = lifted.name;
    attr.kind = lifted.kind;
    attr.role = lifted.role;
    attributes.push_back(std::move(attr));
  }

  struct Block {
    std::string id;
    std::vector<GroundFact> facts;
  };
  std::vector<Block> blocks;
  std::unordered_set<std::string> seen_ids;
  std::optional<Block> open;

  Lexer lexer(text);
  while (!lexer.at_end()) {
    RawTerm term = detail::read_term(lexer);
    lexer.expect('.');
    if (auto id = block_marker(term, "begin")) {
      if (open) {
        throw ParseError("begin(model(" + *id + ")) inside open block " + open->id, term.line,
                         term.column);
      }
      if (!seen_ids.insert(*id).second) {
        throw ParseError("duplicate block ID " + *id, term.line, term.column);
      }
      open = Block{*id, {}};
    } else if (auto end_id = block_marker(term, "end")) {
      if (!open) {
        throw ParseError("end(model(" + *end_id + ")) without matching begin", term.line,
                         term.column);
      }
      if (*end_id != open->id) {
        throw ParseError("end(model(" + *end_id + ")) closes block " + open->id, term.line,
                         term.column);
      }
      blocks.push_back(std::move(*open));
      open.reset();
    } else {
      if (!open) {
        throw ParseError("fact outside begin/end block", term.line, term.column);
      }
      open->facts.push_back(to_ground_fact(term));
    }
  }
  if (open) {
    throw DataError("block " + open->id + " is not closed by end(model(" + open->id + "))");
  }

  // Lift mapped facts into cells; nominal values in first-occurrence order.
  std::vector<std::vector<std::string>> raw(blocks.size(),
                                            std::vector<std::string>(attributes.size()));
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    raw[b][0] = blocks[b].id;
    attributes[0].values.push_back(blocks[b].id);
    for (std::size_t m = 0; m < mapping.attributes.size(); ++m) {
      const LiftedAttribute& lifted = mapping.attributes[m];
      bool found = false;
      for (const GroundFact& f : blocks[b].facts) {
        if (f.functor != lifted.functor || f.arity() != lifted.arity) continue;
        if (found) {
          throw DataError("block " + blocks[b].id + " has more than one " + lifted.functor + "/" +
                          std::to_string(lifted.arity) + " fact for attribute " + lifted.name);
        }
        found = true;
        const Constant& c = f.args[lifted.argument];
        if (lifted.kind == AttributeKind::numeric && !c.is_number()) {
          throw DataError("block " + blocks[b].id + ": non-numeric value " + c.text +
                          " for numeric attribute " + lifted.name);
        }
        raw[b][m + 1] = c.text;
        Attribute& attr = attributes[m + 1];
        if (lifted.kind == AttributeKind::nominal &&
            std::find(attr.values.begin(), attr.values.end(), c.text) == attr.values.end()) {
          attr.values.push_back(c.text);
        }
      }
    }
  }
  for (Attribute& attr : attributes) {
    if (attr.kind == AttributeKind::nominal && attr.values.empty()) {
      attr.kind = AttributeKind::numeric;
    }
  }
  Schema schema(std::move(attributes));

  std::vector<Example> examples;
  examples.reserve(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    Example e;
    e.values.resize(schema.size(), kMissing);
    for (std::size_t a = 0; a < schema.size(); ++a) {
      const std::string& cell = raw[b][a];
      if (cell.empty()) continue;
      if (schema[a].kind == AttributeKind::nominal) {
        e.values[a] = static_cast<double>(*schema[a].code_of(cell));
      } else {
        e.values[a] = parse_number(cell).value_or(kMissing);
      }
    }
    e.facts = std::make_shared<const Interpretation>(std::move(blocks[b].facts));
    examples.push_back(std::move(e));
  }
  return Dataset(std::move(schema), std::move(examples));
}

// ---------------------------------------------------------------------------
// Transformations
// ---------------------------------------------------------------------------

Dataset encode_nominals(const Dataset& ds) {
  std::vector<Attribute> attributes(ds.schema().begin(), ds.schema().end());
  for (Attribute& a : attributes) {
    if (a.kind == AttributeKind::nominal) {
      a.kind = AttributeKind::numeric;
      a.encoded = true;
    }
  }
  // Codes are already stored as numbers; only the schema changes.
  return Dataset(Schema(std::move(attributes)),
                 std::vector<Example>(ds.examples().begin(), ds.examples().end()));
}

Dataset with_class(const Dataset& ds, std::string_view name) {
  const std::size_t target = ds.schema().require(name);
  std::vector<Attribute> attributes(ds.schema().begin(), ds.schema().end());
  for (std::size_t i = 0; i < attributes.size(); ++i) {
    if (i == target) {
      attributes[i].role = AttributeRole::class_label;
    } else if (attributes[i].role == AttributeRole::class_label) {
      attributes[i].role = AttributeRole::descriptive;
    }
  }
  return Dataset(Schema(std::move(attributes)),
                 std::vector<Example>(ds.examples().begin(), ds.examples().end()));
}

Dataset with_targets(const Dataset& ds, std::span<const std::string> names) {
  std::vector<Attribute> attributes(ds.schema().begin(), ds.schema().end());
  for (const std::string& name : names) {
    Attribute& a = attributes[ds.schema().require(name)];
    if (a.role == AttributeRole::class_label) {
      throw ConfigError("'" + name + "' is the class attribute and cannot be a target");
    }
    a.role = AttributeRole::target;
  }
  return Dataset(Schema(std::move(attributes)),
                 std::vector<Example>(ds.examples().begin(), ds.examples().end()));
}

Dataset with_ignored(const Dataset& ds, std::span<const std::string> names) {
  std::vector<Attribute> attributes(ds.schema().begin(), ds.schema().end());
  for (const std::string& name : names) {
    attributes[ds.schema().require(name)].kind = AttributeKind::ignored;
  }
  return Dataset(Schema(std::move(attributes)),
                 std::vector<Example>(ds.examples().begin(), ds.examples().end()));
}

Dataset with_values(const Dataset& ds, std::vector<std::vector<double>> values) {
  if (values.size() != ds.size()) {
    throw DataError("with_values: row count mismatch");
  }
  std::vector<Example> examples(ds.examples().begin(), ds.examples().end());
  for (std::size_t i = 0; i < examples.size(); ++i) {
    examples[i].values = std::move(values[i]);
  }
  return Dataset(ds.schema(), std::move(examples));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace pct
