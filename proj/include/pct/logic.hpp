#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pct/dataset.hpp"

namespace pct {

// ---------------------------------------------------------------------------
// Terms and literals
// ---------------------------------------------------------------------------

struct Variable {
  std::string name;
  bool operator==(const Variable&) const = default;
};

using Term = std::variant<Variable, Constant>;

struct Literal {
  std::string functor;
  std::vector<Term> args;

  std::size_t arity() const { return args.size(); }
  std::string to_string() const;
  bool operator==(const Literal&) const = default;
};

/// Variable name -> constant. A variable is bound at most once.
using Binding = std::map<std::string, Constant, std::less<>>;

/// Parses `p(X,a,1), q(X)`; uppercase-initial names are variables.
std::vector<Literal> parse_conjunction(std::string_view text);

std::string to_string(std::span<const Literal> conjunction);

/// Distinct variables of a conjunction in order of first occurrence.
std::vector<std::string> variables_of(std::span<const Literal> conjunction);

/// Depth-first search for the first extension of `seed` under which every
/// literal is a fact of `facts`. Facts are tried in their stored order, so
/// the result is deterministic.
std::optional<Binding> match_query(std::span<const Literal> conjunction, const Interpretation& facts,
                                   const Binding& seed = {});

// ---------------------------------------------------------------------------
// Node tests
// ---------------------------------------------------------------------------

enum class Comparator { less_equal, equal };

/// `attribute <= value` or `attribute = value`. Missing cells fail.
struct AttributeTest {
  std::size_t attribute = 0;
  Comparator op = Comparator::less_equal;
  double value = 0.0;

  bool operator==(const AttributeTest&) const = default;
};

/// Conjunction of literals whose variables are existentially quantified over
/// the test together with the literals of the succeeded path above it.
struct ConjunctiveTest {
  std::vector<Literal> literals;

  bool operator==(const ConjunctiveTest&) const = default;
};

class TestQuery {
 public:
  TestQuery(AttributeTest test) : test_(test) {}            // NOLINT(google-explicit-constructor)
  TestQuery(ConjunctiveTest test) : test_(std::move(test)) {}  // NOLINT(google-explicit-constructor)

  bool is_attribute_test() const { return std::holds_alternative<AttributeTest>(test_); }
  const AttributeTest& attribute_test() const { return std::get<AttributeTest>(test_); }
  const ConjunctiveTest& conjunctive_test() const { return std::get<ConjunctiveTest>(test_); }

  /// Literals this test adds to the path when it succeeds; empty for
  /// attribute tests.
  std::span<const Literal> literals() const;

  /// True when `example` satisfies the test. `path` holds the literals of the
  /// succeeded tests above the node.
  bool passes(const Example& example, std::span<const Literal> path = {}) const;

  std::string to_string(const Schema& schema) const;

  bool operator==(const TestQuery&) const = default;

 private:
  std::variant<AttributeTest, ConjunctiveTest> test_;
};

// ---------------------------------------------------------------------------
// Templates and candidate generation
// ---------------------------------------------------------------------------

enum class SlotRule {
  bound_variable,  // +type: a variable of that type from the path
  fresh_variable,  // -type: a new variable
  constant,        // #type: a constant observed in the data
};

struct Slot {
  SlotRule rule = SlotRule::constant;
  std::string type;

  bool operator==(const Slot&) const = default;
};

struct Template {
  std::string functor;
  std::vector<Slot> slots;

  std::string to_string() const;
  bool operator==(const Template&) const = default;
};

/// Ordered template list; the order fixes the candidate order.
struct TemplateSet {
  std::vector<Template> templates;

  bool empty() const { return templates.empty(); }
  std::size_t size() const { return templates.size(); }
};

/// One declaration per line: `test <functor>(<slot>, ...)` where a slot is
/// `+type`, `-type` or `#type`. `%` starts a comment.
TemplateSet parse_template_spec(std::string_view text);

struct TypedVariable {
  std::string name;
  std::string type;

  bool operator==(const TypedVariable&) const = default;
};

/// Literals and typed variables introduced by the succeeded tests on the
/// path from the root to a node.
struct PathContext {
  std::vector<Literal> literals;
  std::vector<TypedVariable> variables;

  /// Context for the yes-child of a node whose test is `test`.
  PathContext extended(const TestQuery& test, const TemplateSet& templates) const;
};

struct CandidateOptions {
  /// Longest conjunction placed in one node.
  std::size_t max_literals = 2;
};

/// Candidate node tests, in canonical order: numeric thresholds (schema
/// order, ascending midpoints), nominal equalities (schema order, value
/// order), then template instantiations (template order, sorted constants),
/// then longer conjunctions. Only descriptive attributes are tested.
std::vector<TestQuery> generate_candidates(const PathContext& context, const TemplateSet& templates,
                                           const Dataset& ds,
                                           std::span<const std::size_t> node_examples,
                                           const CandidateOptions& options = {});

}  // namespace pct
