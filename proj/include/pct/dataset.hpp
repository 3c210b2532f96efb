#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pct {

// ---------------------------------------------------------------------------
// Cells
// ---------------------------------------------------------------------------

/// Cells are stored as doubles; nominal cells hold the value code and a
/// quiet NaN marks a missing cell.
inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

inline bool is_missing(double v) { return std::isnan(v); }

/// Parses a finite decimal number; rejects "nan", "inf" and trailing junk.
std::optional<double> parse_number(std::string_view text);

/// Shortest text that parses back to the same double.
std::string format_number(double v);

// ---------------------------------------------------------------------------
// Schema
// ---------------------------------------------------------------------------

enum class AttributeKind { numeric, nominal, ignored };
/// descriptive attributes are tested in nodes and may enter the distance;
/// target attributes enter distances and labels but are never tested.
enum class AttributeRole { descriptive, class_label, key, target };

std::string_view to_string(AttributeKind kind);
std::string_view to_string(AttributeRole role);
AttributeKind attribute_kind_from_string(std::string_view text);
AttributeRole attribute_role_from_string(std::string_view text);

struct Attribute {
  std::string name;
  AttributeKind kind = AttributeKind::numeric;
  AttributeRole role = AttributeRole::descriptive;
  /// Nominal value list. Kept after encoding so labels can be printed.
  std::vector<std::string> values;
  /// True for a numeric attribute that holds nominal codes.
  bool encoded = false;

  bool is_nominal_like() const { return kind == AttributeKind::nominal || encoded; }
  bool is_numeric() const { return kind == AttributeKind::numeric; }
  /// Label for a cell value: the nominal value for codes, the number otherwise.
  std::string format(double v) const;
  /// Code of a nominal value, if present.
  std::optional<std::size_t> code_of(std::string_view value) const;

  bool operator==(const Attribute&) const = default;
};

class Schema {
 public:
  Schema() = default;
  /// Throws ConfigError when an invariant is broken.
  explicit Schema(std::vector<Attribute> attributes);

  std::size_t size() const { return attributes_.size(); }
  bool empty() const { return attributes_.empty(); }
  const Attribute& operator[](std::size_t i) const { return attributes_[i]; }
  std::span<const Attribute> attributes() const { return attributes_; }
  auto begin() const { return attributes_.begin(); }
  auto end() const { return attributes_.end(); }

  std::optional<std::size_t> index_of(std::string_view name) const;
  /// Like index_of but throws ConfigError naming the attribute.
  std::size_t require(std::string_view name) const;
  std::optional<std::size_t> class_index() const;

  bool operator==(const Schema&) const = default;

 private:
  std::vector<Attribute> attributes_;
};

// ---------------------------------------------------------------------------
// Relational part of an example
// ---------------------------------------------------------------------------

/// A constant in a ground fact or a query: an identifier or a number.
/// Numbers compare by value, identifiers by text.
struct Constant {
  std::string text;
  std::optional<double> number;

  static Constant identifier(std::string text);
  static Constant numeric(double value);
  /// Numbers when the token parses as one, identifiers otherwise.
  static Constant from_token(std::string_view token);

  bool is_number() const { return number.has_value(); }
  bool operator==(const Constant& other) const;
  /// Canonical order: numbers ascending, then identifiers lexicographically.
  bool operator<(const Constant& other) const;
};

struct GroundFact {
  std::string functor;
  std::vector<Constant> args;

  std::size_t arity() const { return args.size(); }
  std::string to_string() const;
  bool operator==(const GroundFact& other) const = default;
};

/// Immutable set of ground facts with an index by functor/arity that keeps
/// the original fact order.
class Interpretation {
 public:
  Interpretation() = default;
  explicit Interpretation(std::vector<GroundFact> facts);

  std::span<const GroundFact> facts() const { return facts_; }
  std::size_t size() const { return facts_.size(); }
  bool empty() const { return facts_.empty(); }

  /// Indices (in fact order) of the facts with the given functor and arity.
  std::span<const std::size_t> lookup(std::string_view functor, std::size_t arity) const;

  bool contains(const GroundFact& fact) const;

 private:
  std::vector<GroundFact> facts_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> index_;
};

/// Shared empty interpretation used by propositional examples.
std::shared_ptr<const Interpretation> empty_interpretation();

// ---------------------------------------------------------------------------
// Examples and datasets
// ---------------------------------------------------------------------------

struct Example {
  std::size_t id = 0;
  std::vector<double> values;
  std::shared_ptr<const Interpretation> facts = empty_interpretation();
  double weight = 1.0;

  double value(std::size_t attribute) const { return values[attribute]; }
};

/// Immutable collection of examples conforming to a schema. Example ids are
/// renumbered 0..n-1 on construction.
class Dataset {
 public:
  Dataset() = default;
  /// Validates every example against the schema; throws DataError.
  Dataset(Schema schema, std::vector<Example> examples);

  const Schema& schema() const { return schema_; }
  std::size_t size() const { return examples_.size(); }
  bool empty() const { return examples_.empty(); }
  const Example& operator[](std::size_t id) const { return examples_[id]; }
  std::span<const Example> examples() const { return examples_; }

  /// All example ids, 0..n-1.
  std::vector<std::size_t> ids() const;

 private:
  Schema schema_;
  std::vector<Example> examples_;
};

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

struct CsvOptions {
  /// Columns to read as nominal even when every cell is numeric. "*" selects
  /// every column. Numeric-looking values are then ordered numerically.
  std::set<std::string, std::less<>> nominal;
};

/// Parses header-line CSV. Without a schema, kinds are inferred: a column
/// whose non-missing cells all parse as numbers is numeric, otherwise nominal
/// with values in first-occurrence order. "?" is a missing cell.
Dataset parse_csv(std::string_view text, const std::optional<Schema>& schema = std::nullopt,
                  const CsvOptions& options = {});

/// Writes the dataset back as CSV; nominal cells are written as their labels.
std::string to_csv(const Dataset& ds);

// ---------------------------------------------------------------------------
// Interpretations
// ---------------------------------------------------------------------------

/// One declaration of the attribute-mapping sidecar: lift argument `argument`
/// of every `functor/arity` fact into attribute `name`.
struct LiftedAttribute {
  std::string name;
  AttributeRole role = AttributeRole::descriptive;
  std::string functor;
  std::size_t arity = 1;
  std::size_t argument = 0;
  AttributeKind kind = AttributeKind::numeric;
};

struct AttributeMapping {
  std::vector<LiftedAttribute> attributes;
};

/// Grammar, one declaration per line, `%` starts a comment:
///   (attribute|target|class|key) <name> from <functor>/<arity> (numeric|nominal) [arg <k>]
/// `arg` is 1-based and defaults to the last argument.
AttributeMapping parse_attribute_mapping(std::string_view text);

/// Reads `begin(model(ID)).` ... `end(model(ID)).` blocks of ground facts.
/// Each block becomes one example; the facts named in `mapping` are also
/// lifted into attribute cells. A key attribute "model" holds the block ID.
Dataset parse_interpretations(std::string_view text, const AttributeMapping& mapping = {});

// ---------------------------------------------------------------------------
// Transformations
// ---------------------------------------------------------------------------

/// Replaces every nominal attribute by a numeric one holding the code.
/// Idempotent; missing cells stay missing.
Dataset encode_nominals(const Dataset& ds);

/// Returns a copy with `name` as the class attribute (and any previous class
/// attribute demoted to descriptive).
Dataset with_class(const Dataset& ds, std::string_view name);

/// Returns a copy with the named attributes given the target role.
Dataset with_targets(const Dataset& ds, std::span<const std::string> names);

/// Returns a copy with the named attributes marked ignored.
Dataset with_ignored(const Dataset& ds, std::span<const std::string> names);

/// Returns a copy with some cells replaced; used by corruption experiments.
Dataset with_values(const Dataset& ds, std::vector<std::vector<double>> values);

/// Reads a whole file; throws DataError naming the path when unreadable.
std::string read_file(const std::string& path);

}  // namespace pct
