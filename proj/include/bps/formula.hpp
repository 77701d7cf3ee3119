#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bps/alphabet.hpp"
#include "bps/bitset.hpp"

namespace bps {

enum class FormulaKind { Constant, Variable, Negation, Conjunction, Disjunction };

// Immutable propositional formula over symbol indices. Copies share nodes,
// so formulas are cheap to pass by value and safe to use across threads.
// Conjunction/disjunction nodes are flat and n-ary with at least two
// children; no simplification is ever applied.
class Formula {
 public:
  Formula();  // constant false

  static Formula constant(bool value);
  static Formula variable(std::size_t id);
  static Formula negation(Formula f);
  static Formula conjunction(std::vector<Formula> children);  // >= 2 children
  static Formula disjunction(std::vector<Formula> children);  // >= 2 children

  // Smart constructors: empty -> neutral constant, singleton -> the child.
  static Formula all_of(std::vector<Formula> children);
  static Formula any_of(std::vector<Formula> children);

  FormulaKind kind() const;
  bool constant_value() const;
  std::size_t variable_id() const;
  const Formula& operand() const;                 // Negation only
  const std::vector<Formula>& operands() const;   // Conjunction/Disjunction

  // Truth value with variables in w read as 1, all others as 0.
  bool eval(const SymbolSet& w) const;

  SymbolSet free_vars(std::size_t universe) const;
  bool vars_within(std::size_t universe) const;

  // Replaces bound variables by constants; unbound entries keep the variable.
  Formula substitute(const std::vector<std::optional<bool>>& binding) const;

  // Renames variable i to new_ids[i].
  Formula remap(const std::vector<std::size_t>& new_ids) const;

  bool operator==(const Formula& other) const;  // structural
  bool operator!=(const Formula& other) const { return !(*this == other); }

  // Concrete syntax; parse(to_string(f)) == f structurally.
  std::string to_string(const Alphabet& alphabet) const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Grammar:
//   expr   := term { "|" term }
//   term   := factor { "&" factor }
//   factor := "!" factor | "(" expr ")" | IDENT | "0" | "1"
// "&" binds tighter than "|"; runs of the same operator parse to one flat node.
Formula parse_formula(std::string_view text, const Alphabet& alphabet);

// Conjunction satisfied by W exactly when W ∩ universe == mu.
Formula exact_set_formula(const SymbolSet& mu, const SymbolSet& universe);

}  // namespace bps
