#include "pct/logic.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_set>

#include "pct/error.hpp"
#include "term_syntax.hpp"

namespace pct {

namespace {

bool needs_quotes(const std::string& text) {
  if (text.empty() || std::islower(static_cast<unsigned char>(text[0])) == 0) return true;
  return !std::all_of(text.begin(), text.end(), detail::is_name_char);
}

std::string constant_text(const Constant& c) {
  if (c.is_number() || !needs_quotes(c.text)) return c.text;
  return "'" + c.text + "'";
}

}  // namespace

std::string Literal::to_string() const {
  std::string out = functor;
  if (args.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) out += ',';
    if (const auto* v = std::get_if<Variable>(&args[i])) {
      out += v->name;
    } else {
      out += constant_text(std::get<Constant>(args[i]));
    }
  }
  out += ')';
  return out;
}

std::string to_string(std::span<const Literal> conjunction) {
  std::string out;
  for (std::size_t i = 0; i < conjunction.size(); ++i) {
    if (i > 0) out += ", ";
    out += conjunction[i].to_string();
  }
  return out;
}

std::vector<std::string> variables_of(std::span<const Literal> conjunction) {
  std::vector<std::string> out;
  for (const Literal& lit : conjunction) {
    for (const Term& t : lit.args) {
      if (const auto* v = std::get_if<Variable>(&t)) {
        if (v->name != "_" && std::find(out.begin(), out.end(), v->name) == out.end()) {
          out.push_back(v->name);
        }
      }
    }
  }
  return out;
}

std::vector<Literal> parse_conjunction(std::string_view text) {
  detail::Lexer lexer(text);
  std::vector<Literal> out;
  if (lexer.at_end()) return out;
  do {
    const detail::RawTerm term = detail::read_term(lexer);
    if (term.kind != detail::TokenKind::identifier) {
      throw ParseError("literal must start with a predicate name, found '" + term.text + "'",
                       term.line, term.column);
    }
    Literal lit;
    lit.functor = term.text;
    for (const detail::RawTerm& arg : term.args) {
      if (arg.compound) {
        throw ParseError("nested terms are not supported", arg.line, arg.column);
      }
      if (arg.kind == detail::TokenKind::variable) {
        lit.args.emplace_back(Variable{arg.text});
      } else {
        lit.args.emplace_back(Constant::from_token(arg.text));
      }
    }
    out.push_back(std::move(lit));
  } while (lexer.accept(','));
  lexer.accept('.');
  if (!lexer.at_end()) {
    lexer.fail("unexpected '" + lexer.peek().text + "'", lexer.peek());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Matching
// ---------------------------------------------------------------------------

namespace {

bool unify(const Literal& lit, const GroundFact& fact, Binding& binding,
           std::vector<std::string>& trail) {
  for (std::size_t i = 0; i < lit.args.size(); ++i) {
    const Constant& value = fact.args[i];
    if (const auto* c = std::get_if<Constant>(&lit.args[i])) {
      if (!(*c == value)) return false;
      continue;
    }
    const std::string& name = std::get<Variable>(lit.args[i]).name;
    if (name == "_") continue;
    if (const auto it = binding.find(name); it != binding.end()) {
      if (!(it->second == value)) return false;
    } else {
      binding.emplace(name, value);
      trail.push_back(name);
    }
  }
  return true;
}

bool solve(std::span<const Literal> conjunction, std::size_t k, const Interpretation& facts,
           Binding& binding) {
  if (k == conjunction.size()) return true;
  const Literal& lit = conjunction[k];
  const auto all = facts.facts();
  for (const std::size_t idx : facts.lookup(lit.functor, lit.arity())) {
    std::vector<std::string> trail;
    if (unify(lit, all[idx], binding, trail) && solve(conjunction, k + 1, facts, binding)) {
      return true;
    }
    for (const std::string& name : trail) binding.erase(name);
  }
  return false;
}

}  // namespace

std::optional<Binding> match_query(std::span<const Literal> conjunction, const Interpretation& facts,
                                   const Binding& seed) {
  Binding binding = seed;
  if (solve(conjunction, 0, facts, binding)) return binding;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// TestQuery
// ---------------------------------------------------------------------------

std::span<const Literal> TestQuery::literals() const {
  if (const auto* c = std::get_if<ConjunctiveTest>(&test_)) return c->literals;
  return {};
}

bool TestQuery::passes(const Example& example, std::span<const Literal> path) const {
  if (const auto* a = std::get_if<AttributeTest>(&test_)) {
    const double v = example.values[a->attribute];
    if (is_missing(v)) return false;
    return a->op == Comparator::less_equal ? v <= a->value : v == a->value;
  }
  const auto& lits = std::get<ConjunctiveTest>(test_).literals;
  if (path.empty()) return match_query(lits, *example.facts).has_value();
  std::vector<Literal> full(path.begin(), path.end());
  full.insert(full.end(), lits.begin(), lits.end());
  return match_query(full, *example.facts).has_value();
}

std::string TestQuery::to_string(const Schema& schema) const {
  if (const auto* a = std::get_if<AttributeTest>(&test_)) {
    const Attribute& attr = schema[a->attribute];
    if (a->op == Comparator::less_equal) return attr.name + " <= " + format_number(a->value);
    return attr.name + " = " + attr.format(a->value);
  }
  return pct::to_string(std::get<ConjunctiveTest>(test_).literals);
}

// ---------------------------------------------------------------------------
// Templates
// ---------------------------------------------------------------------------

std::string Template::to_string() const {
  std::string out = functor;
  if (slots.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (i > 0) out += ',';
    switch (slots[i].rule) {
      case SlotRule::bound_variable:
        out += '+';
        break;
      case SlotRule::fresh_variable:
        out += '-';
        break;
      case SlotRule::constant:
        out += '#';
        break;
    }
    out += slots[i].type;
  }
  out += ')';
  return out;
}

TemplateSet parse_template_spec(std::string_view text) {
  using detail::TokenKind;
  detail::Lexer lexer(text);
  TemplateSet set;
  while (!lexer.at_end()) {
    const detail::Token keyword = lexer.next();
    if (keyword.kind != TokenKind::identifier || keyword.text != "test") {
      lexer.fail("expected 'test' declaration, found '" + keyword.text + "'", keyword);
    }
    const detail::Token name = lexer.next();
    if (name.kind != TokenKind::identifier) {
      lexer.fail("expected predicate name after 'test'", name);
    }
    Template tmpl;
    tmpl.functor = name.text;
    if (lexer.accept('(')) {
      do {
        const detail::Token rule = lexer.next();
        Slot slot;
        if (rule.kind == TokenKind::punct && rule.text == "+") {
          slot.rule = SlotRule::bound_variable;
        } else if (rule.kind == TokenKind::punct && rule.text == "-") {
          slot.rule = SlotRule::fresh_variable;
        } else if (rule.kind == TokenKind::punct && rule.text == "#") {
          slot.rule = SlotRule::constant;
        } else {
          lexer.fail("unknown fill rule '" + rule.text + "' (expected +, - or #)", rule);
        }
        const detail::Token type = lexer.next();
        if (type.kind != TokenKind::identifier && type.kind != TokenKind::variable) {
          lexer.fail("expected a type name after '" + rule.text + "'", type);
        }
        slot.type = type.text;
        tmpl.slots.push_back(std::move(slot));
      } while (lexer.accept(','));
      lexer.expect(')');
    }
    lexer.accept('.');
    if (std::find(set.templates.begin(), set.templates.end(), tmpl) != set.templates.end()) {
      throw ParseError("duplicate template " + tmpl.to_string(), keyword.line, keyword.column);
    }
    set.templates.push_back(std::move(tmpl));
  }
  return set;
}

// ---------------------------------------------------------------------------
// Candidate generation
// ---------------------------------------------------------------------------

namespace {

const Template* template_for(const Literal& lit, const TemplateSet& templates) {
  for (const Template& t : templates.templates) {
    if (t.functor == lit.functor && t.slots.size() == lit.arity()) return &t;
  }
  return nullptr;
}

std::string fresh_name(const std::string& type, std::unordered_set<std::string>& used) {
  std::string base = "V";
  if (!type.empty() && std::isalpha(static_cast<unsigned char>(type[0])) != 0) {
    base = std::string(1, static_cast<char>(std::toupper(static_cast<unsigned char>(type[0]))));
  }
  std::string name = base;
  for (int k = 1; used.contains(name); ++k) name = base + std::to_string(k);
  used.insert(name);
  return name;
}

// Sorted, distinct constants at each argument position of a signature,
// collected over the node's examples.
class ObservedConstants {
 public:
  ObservedConstants(const Dataset& ds, std::span<const std::size_t> ids) : ds_(ds), ids_(ids) {}

  const std::vector<Constant>& at(const std::string& functor, std::size_t arity, std::size_t pos) {
    const std::string key = functor + "/" + std::to_string(arity) + "#" + std::to_string(pos);
    if (const auto it = cache_.find(key); it != cache_.end()) return it->second;
    std::set<Constant> seen;
    for (const std::size_t id : ids_) {
      const Interpretation& facts = *ds_[id].facts;
      for (const std::size_t f : facts.lookup(functor, arity)) {
        seen.insert(facts.facts()[f].args[pos]);
      }
    }
    return cache_.emplace(key, std::vector<Constant>(seen.begin(), seen.end())).first->second;
  }

 private:
  const Dataset& ds_;
  std::span<const std::size_t> ids_;
  std::map<std::string, std::vector<Constant>> cache_;
};

struct Instantiation {
  Literal literal;
  std::vector<TypedVariable> introduced;
};

// All instantiations of one template. `available` are the variables a `+`
// slot may take; when `required` is non-empty, at least one `+` slot must
// use one of them.
std::vector<Instantiation> instantiate(const Template& tmpl,
                                       const std::vector<TypedVariable>& available,
                                       const std::vector<TypedVariable>& required,
                                       ObservedConstants& observed) {
  std::unordered_set<std::string> used;
  for (const TypedVariable& v : available) used.insert(v.name);

  std::vector<std::vector<Term>> choices(tmpl.slots.size());
  std::vector<TypedVariable> fresh;
  for (std::size_t i = 0; i < tmpl.slots.size(); ++i) {
    const Slot& slot = tmpl.slots[i];
    switch (slot.rule) {
      case SlotRule::bound_variable:
        for (const TypedVariable& v : available) {
          if (v.type == slot.type) choices[i].emplace_back(Variable{v.name});
        }
        if (choices[i].empty()) {
          // Nothing of this type is bound yet: the slot opens a new variable.
          TypedVariable v{fresh_name(slot.type, used), slot.type};
          choices[i].emplace_back(Variable{v.name});
          fresh.push_back(v);
        }
        break;
      case SlotRule::fresh_variable: {
        TypedVariable v{fresh_name(slot.type, used), slot.type};
        choices[i].emplace_back(Variable{v.name});
        fresh.push_back(v);
        break;
      }
      case SlotRule::constant:
        for (const Constant& c : observed.at(tmpl.functor, tmpl.slots.size(), i)) {
          choices[i].emplace_back(c);
        }
        break;
    }
    if (choices[i].empty()) return {};
  }

  std::vector<Instantiation> out;
  std::vector<std::size_t> pick(choices.size(), 0);
  while (true) {
    Instantiation inst;
    inst.literal.functor = tmpl.functor;
    bool uses_required = required.empty();
    for (std::size_t i = 0; i < choices.size(); ++i) {
      const Term& t = choices[i][pick[i]];
      if (!uses_required && tmpl.slots[i].rule == SlotRule::bound_variable) {
        const auto& name = std::get<Variable>(t).name;
        uses_required = std::any_of(required.begin(), required.end(),
                                    [&](const TypedVariable& r) { return r.name == name; });
      }
      inst.literal.args.push_back(t);
    }
    if (uses_required) {
      for (const TypedVariable& v : fresh) {
        const bool present = std::any_of(inst.literal.args.begin(), inst.literal.args.end(),
                                         [&](const Term& t) {
                                           const auto* var = std::get_if<Variable>(&t);
                                           return var && var->name == v.name;
                                         });
        if (present) inst.introduced.push_back(v);
      }
      out.push_back(std::move(inst));
    }
    // Odometer over the choice lists, last slot fastest.
    std::size_t k = choices.size();
    while (k > 0) {
      --k;
      if (++pick[k] < choices[k].size()) break;
      pick[k] = 0;
      if (k == 0) return out;
    }
    if (choices.empty()) return out;
  }
}

}  // namespace

PathContext PathContext::extended(const TestQuery& test, const TemplateSet& templates) const {
  PathContext next = *this;
  for (const Literal& lit : test.literals()) {
    next.literals.push_back(lit);
    const Template* tmpl = template_for(lit, templates);
    for (std::size_t i = 0; i < lit.args.size(); ++i) {
      const auto* v = std::get_if<Variable>(&lit.args[i]);
      if (!v || v->name == "_") continue;
      const bool known = std::any_of(next.variables.begin(), next.variables.end(),
                                     [&](const TypedVariable& tv) { return tv.name == v->name; });
      if (!known) next.variables.push_back({v->name, tmpl ? tmpl->slots[i].type : std::string()});
    }
  }
  return next;
}

std::vector<TestQuery> generate_candidates(const PathContext& context, const TemplateSet& templates,
                                           const Dataset& ds,
                                           std::span<const std::size_t> node_examples,
                                           const CandidateOptions& options) {
  std::vector<TestQuery> out;
  const Schema& schema = ds.schema();

  for (std::size_t a = 0; a < schema.size(); ++a) {
    const Attribute& attr = schema[a];
    if (attr.role != AttributeRole::descriptive || attr.kind != AttributeKind::numeric) continue;
    std::vector<double> values;
    for (const std::size_t id : node_examples) {
      const double v = ds[id].values[a];
      if (!is_missing(v)) values.push_back(v);
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
      out.emplace_back(AttributeTest{a, Comparator::less_equal, values[i] + (values[i + 1] - values[i]) / 2});
    }
  }
  for (std::size_t a = 0; a < schema.size(); ++a) {
    const Attribute& attr = schema[a];
    if (attr.role != AttributeRole::descriptive || attr.kind != AttributeKind::nominal) continue;
    std::vector<bool> present(attr.values.size(), false);
    for (const std::size_t id : node_examples) {
      const double v = ds[id].values[a];
      if (!is_missing(v)) present[static_cast<std::size_t>(v)] = true;
    }
    for (std::size_t code = 0; code < present.size(); ++code) {
      if (present[code]) out.emplace_back(AttributeTest{a, Comparator::equal, static_cast<double>(code)});
    }
  }

  if (templates.empty() || options.max_literals == 0) return out;

  ObservedConstants observed(ds, node_examples);
  std::set<std::string> seen;
  std::vector<Instantiation> first;
  for (const Template& tmpl : templates.templates) {
    for (Instantiation& inst : instantiate(tmpl, context.variables, {}, observed)) {
      if (seen.insert(inst.literal.to_string()).second) {
        out.emplace_back(ConjunctiveTest{{inst.literal}});
        first.push_back(std::move(inst));
      }
    }
  }
  if (options.max_literals < 2) return out;

  // Two-literal conjunctions: the second literal consumes a variable that the
  // first one introduced.
  for (const Instantiation& head : first) {
    if (head.introduced.empty()) continue;
    std::vector<TypedVariable> available = context.variables;
    available.insert(available.end(), head.introduced.begin(), head.introduced.end());
    for (const Template& tmpl : templates.templates) {
      for (Instantiation& tail : instantiate(tmpl, available, head.introduced, observed)) {
        if (tail.literal == head.literal) continue;
        std::vector<Literal> lits{head.literal, tail.literal};
        if (seen.insert(pct::to_string(lits)).second) {
          out.emplace_back(ConjunctiveTest{std::move(lits)});
        }
      }
    }
  }
  return out;
}

}  // namespace pct
