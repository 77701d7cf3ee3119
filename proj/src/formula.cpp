#include "bps/formula.hpp"

#include <cctype>

#include "bps/error.hpp"

namespace bps {

struct Formula::Node {
  FormulaKind kind;
  bool value = false;
  std::size_t var = 0;
  std::vector<Formula> kids;
};

Formula::Formula() {
  static const std::shared_ptr<const Node> false_node = [] {
    auto n = std::make_shared<Node>();
    n->kind = FormulaKind::Constant;
    n->value = false;
    return n;
  }();
  node_ = false_node;
}

Formula Formula::constant(bool value) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Constant;
  n->value = value;
  return Formula(std::move(n));
}

Formula Formula::variable(std::size_t id) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Variable;
  n->var = id;
  return Formula(std::move(n));
}

Formula Formula::negation(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Negation;
  n->kids.push_back(std::move(f));
  return Formula(std::move(n));
}

Formula Formula::conjunction(std::vector<Formula> children) {
  if (children.size() < 2)
    throw ModelError("conjunction requires at least two operands");
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Conjunction;
  n->kids = std::move(children);
  return Formula(std::move(n));
}

Formula Formula::disjunction(std::vector<Formula> children) {
  if (children.size() < 2)
    throw ModelError("disjunction requires at least two operands");
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Disjunction;
  n->kids = std::move(children);
  return Formula(std::move(n));
}

Formula Formula::all_of(std::vector<Formula> children) {
  if (children.empty()) return constant(true);
  if (children.size() == 1) return children[0];
  return conjunction(std::move(children));
}

Formula Formula::any_of(std::vector<Formula> children) {
  if (children.empty()) return constant(false);
  if (children.size() == 1) return children[0];
  return disjunction(std::move(children));
}

FormulaKind Formula::kind() const { return node_->kind; }

bool Formula::constant_value() const {
  if (node_->kind != FormulaKind::Constant) throw ModelError("not a constant");
  return node_->value;
}

std::size_t Formula::variable_id() const {
  if (node_->kind != FormulaKind::Variable) throw ModelError("not a variable");
  return node_->var;
}

const Formula& Formula::operand() const {
  if (node_->kind != FormulaKind::Negation) throw ModelError("not a negation");
  return node_->kids[0];
}

const std::vector<Formula>& Formula::operands() const {
  if (node_->kind != FormulaKind::Conjunction && node_->kind != FormulaKind::Disjunction)
    throw ModelError("not a conjunction or disjunction");
  return node_->kids;
}

bool Formula::eval(const SymbolSet& w) const {
  switch (node_->kind) {
    case FormulaKind::Constant: return node_->value;
    case FormulaKind::Variable: return w.test(node_->var);
    case FormulaKind::Negation: return !node_->kids[0].eval(w);
    case FormulaKind::Conjunction:
      for (const auto& k : node_->kids)
        if (!k.eval(w)) return false;
      return true;
    case FormulaKind::Disjunction:
      for (const auto& k : node_->kids)
        if (k.eval(w)) return true;
      return false;
  }
  return false;
}

SymbolSet Formula::free_vars(std::size_t universe) const {
  SymbolSet vars(universe);
  switch (node_->kind) {
    case FormulaKind::Constant: break;
    case FormulaKind::Variable: vars.set(node_->var); break;
    default:
      for (const auto& k : node_->kids) vars |= k.free_vars(universe);
  }
  return vars;
}

bool Formula::vars_within(std::size_t universe) const {
  switch (node_->kind) {
    case FormulaKind::Constant: return true;
    case FormulaKind::Variable: return node_->var < universe;
    default:
      for (const auto& k : node_->kids)
        if (!k.vars_within(universe)) return false;
      return true;
  }
}

Formula Formula::substitute(const std::vector<std::optional<bool>>& binding) const {
  switch (node_->kind) {
    case FormulaKind::Constant: return *this;
    case FormulaKind::Variable:
      if (node_->var < binding.size() && binding[node_->var])
        return constant(*binding[node_->var]);
      return *this;
    case FormulaKind::Negation: return negation(node_->kids[0].substitute(binding));
    case FormulaKind::Conjunction:
    case FormulaKind::Disjunction: {
      std::vector<Formula> kids;
      kids.reserve(node_->kids.size());
      for (const auto& k : node_->kids) kids.push_back(k.substitute(binding));
      return node_->kind == FormulaKind::Conjunction ? conjunction(std::move(kids))
                                                     : disjunction(std::move(kids));
    }
  }
  return *this;
}

Formula Formula::remap(const std::vector<std::size_t>& new_ids) const {
  switch (node_->kind) {
    case FormulaKind::Constant: return *this;
    case FormulaKind::Variable:
      if (node_->var >= new_ids.size())
        throw ModelError("variable index out of range in remap");
      return variable(new_ids[node_->var]);
    case FormulaKind::Negation: return negation(node_->kids[0].remap(new_ids));
    case FormulaKind::Conjunction:
    case FormulaKind::Disjunction: {
      std::vector<Formula> kids;
      kids.reserve(node_->kids.size());
      for (const auto& k : node_->kids) kids.push_back(k.remap(new_ids));
      return node_->kind == FormulaKind::Conjunction ? conjunction(std::move(kids))
                                                     : disjunction(std::move(kids));
    }
  }
  return *this;
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind) return false;
  switch (node_->kind) {
    case FormulaKind::Constant: return node_->value == other.node_->value;
    case FormulaKind::Variable: return node_->var == other.node_->var;
    default:
      if (node_->kids.size() != other.node_->kids.size()) return false;
      for (std::size_t i = 0; i < node_->kids.size(); ++i)
        if (!(node_->kids[i] == other.node_->kids[i])) return false;
      return true;
  }
}

namespace {

// Parenthesization slots, by what the grammar allows at that position.
enum class Slot { Top, OrChild, AndChild, FactorChild };

bool needs_parens(FormulaKind kind, Slot slot) {
  switch (slot) {
    case Slot::Top: return false;
    case Slot::OrChild: return kind == FormulaKind::Disjunction;
    case Slot::AndChild:
    case Slot::FactorChild:
      return kind == FormulaKind::Disjunction || kind == FormulaKind::Conjunction;
  }
  return false;
}

void print(const Formula& f, const Alphabet& alphabet, Slot slot, std::string& out) {
  bool parens = needs_parens(f.kind(), slot);
  if (parens) out += "(";
  switch (f.kind()) {
    case FormulaKind::Constant:
      out += f.constant_value() ? "1" : "0";
      break;
    case FormulaKind::Variable:
      out += alphabet.name(f.variable_id());
      break;
    case FormulaKind::Negation:
      out += "!";
      print(f.operand(), alphabet, Slot::FactorChild, out);
      break;
    case FormulaKind::Conjunction: {
      bool first = true;
      for (const auto& k : f.operands()) {
        if (!first) out += " & ";
        print(k, alphabet, Slot::AndChild, out);
        first = false;
      }
      break;
    }
    case FormulaKind::Disjunction: {
      bool first = true;
      for (const auto& k : f.operands()) {
        if (!first) out += " | ";
        print(k, alphabet, Slot::OrChild, out);
        first = false;
      }
      break;
    }
  }
  if (parens) out += ")";
}

struct Parser {
  std::string_view text;
  std::size_t pos = 0;
  const Alphabet& alphabet;

  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_space();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg, std::size_t at) {
    throw ParseError(msg, 0, at + 1);
  }

  Formula expr() {
    std::vector<Formula> parts;
    parts.push_back(term());
    while (eat('|')) parts.push_back(term());
    return parts.size() == 1 ? parts[0] : Formula::disjunction(std::move(parts));
  }

  Formula term() {
    std::vector<Formula> parts;
    parts.push_back(factor());
    while (eat('&')) parts.push_back(factor());
    return parts.size() == 1 ? parts[0] : Formula::conjunction(std::move(parts));
  }

  Formula factor() {
    skip_space();
    if (pos >= text.size()) fail("unexpected end of formula", pos);
    char c = text[pos];
    if (c == '!') {
      ++pos;
      return Formula::negation(factor());
    }
    if (c == '(') {
      ++pos;
      Formula inner = expr();
      if (!eat(')')) fail("expected ')'", pos);
      return inner;
    }
    if (c == '0' || c == '1') {
      ++pos;
      return Formula::constant(c == '1');
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
      std::string name(text.substr(start, pos - start));
      auto id = alphabet.find(name);
      if (!id) fail("unknown identifier '" + name + "'", start);
      return Formula::variable(*id);
    }
    fail(std::string("unexpected character '") + c + "'", pos);
  }
};

}  // namespace

std::string Formula::to_string(const Alphabet& alphabet) const {
  std::string out;
  print(*this, alphabet, Slot::Top, out);
  return out;
}

Formula parse_formula(std::string_view text, const Alphabet& alphabet) {
  Parser p{text, 0, alphabet};
  Formula f = p.expr();
  p.skip_space();
  if (p.pos != text.size())
    throw ParseError("trailing input after formula", 0, p.pos + 1);
  return f;
}

Formula exact_set_formula(const SymbolSet& mu, const SymbolSet& universe) {
  if (mu.universe() != universe.universe() || !mu.subset_of(universe))
    throw ModelError("exact_set_formula requires mu to be a subset of the universe");
  std::vector<Formula> parts;
  mu.for_each([&](std::size_t i) { parts.push_back(Formula::variable(i)); });
  (universe - mu).for_each([&](std::size_t i) {
    parts.push_back(Formula::negation(Formula::variable(i)));
  });
  return Formula::all_of(std::move(parts));
}

}  // namespace bps
