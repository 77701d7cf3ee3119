#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bps/alphabet.hpp"
#include "bps/bitset.hpp"
#include "bps/formula.hpp"

namespace bps {

// Guarded set-rewriting rule: lhs -> rhs, enabled when lhs is contained in
// the configuration and the guard evaluates to true on it.
struct Rule {
  std::string id;
  SymbolSet lhs;
  SymbolSet rhs;
  Formula guard;
};

// A Boolean P system: an alphabet and a set of rules over it.
class Bps {
 public:
  Bps() = default;
  Bps(Alphabet alphabet, std::vector<Rule> rules);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Rule>& rules() const { return rules_; }
  const Rule& rule(std::size_t i) const;
  std::size_t num_rules() const { return rules_.size(); }

  std::optional<std::size_t> find_rule(std::string_view id) const;
  std::size_t rule_index(std::string_view id) const;  // throws ModelError

  RuleSet no_rules() const { return RuleSet(rules_.size()); }
  RuleSet all_rules() const { return RuleSet::full(rules_.size()); }
  RuleSet rule_set_of(const std::vector<std::string>& ids) const;

  std::vector<std::string> rule_ids(const RuleSet& rs) const;
  std::string format_rule_set(const RuleSet& rs) const;  // "{r1,r2}"

 private:
  Alphabet alphabet_;
  std::vector<Rule> rules_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

// A finite family of rule sets ("advised" sets of rules), kept symbolically
// until enumerated. The denoted family of a symbolic node always equals its
// explicit expansion.
class QuasiMode {
 public:
  enum class Kind { Explicit, Singleton, Powerset, Product, Union };

  // Empty family over a system with `rule_universe` rules.
  static QuasiMode none(std::size_t rule_universe);
  static QuasiMode explicit_family(std::size_t rule_universe, std::vector<RuleSet> elements);
  static QuasiMode singleton(RuleSet rules);
  static QuasiMode powerset_of(RuleSet rules);
  static QuasiMode dotted_product(QuasiMode a, QuasiMode b);
  static QuasiMode union_of(std::vector<QuasiMode> parts);

  Kind kind() const;
  std::size_t rule_universe() const;
  const std::vector<RuleSet>& elements() const;         // Explicit
  const RuleSet& rules() const;                         // Singleton / Powerset
  const QuasiMode& left() const;                        // Product
  const QuasiMode& right() const;                       // Product
  const std::vector<QuasiMode>& parts() const;          // Union

  static constexpr std::size_t kEnumerationLimit = std::size_t{1} << 20;

  // Deduplicated expansion in canonical (numeric) order.
  std::vector<RuleSet> enumerate(std::size_t limit = kEnumerationLimit) const;

 private:
  struct Repr;
  explicit QuasiMode(std::shared_ptr<const Repr> repr) : repr_(std::move(repr)) {}
  std::shared_ptr<const Repr> repr_;
};

// Pairwise-union product of two rule-set families.
QuasiMode dotted_product(const QuasiMode& a, const QuasiMode& b);

// Relabels every rule index i of the family to new_ids[i].
QuasiMode remap_rules(const QuasiMode& q, const std::vector<std::size_t>& new_ids,
                      std::size_t new_universe);

// How successor configurations are chosen at each step.
class ModeSpec {
 public:
  static ModeSpec max_parallel();
  static ModeSpec from_quasimode(QuasiMode q);

  bool is_max_parallel() const { return !quasimode_.has_value(); }
  const QuasiMode& quasimode() const;

 private:
  ModeSpec() = default;
  std::optional<QuasiMode> quasimode_;
};

bool is_applicable(const Rule& r, const SymbolSet& w);

// The individually applicable rules; a set of rules is applicable exactly
// when it only contains such rules.
RuleSet applicable_rules(const Bps& p, const SymbolSet& w);

// (w \ union of lhs) | (union of rhs); additions win on overlap. Every rule
// in rs must be applicable to w.
SymbolSet apply_rule_set(const Bps& p, const SymbolSet& w, const RuleSet& rs);

// The advised sets whose every rule is applicable to w (strict filter).
std::vector<RuleSet> derive_mode(const QuasiMode& q, const Bps& p, const SymbolSet& w);

struct Step {
  RuleSet fired;
  SymbolSet successor;
};

// Precomputes the advised family once; successors() is then pure per call.
//
// Under a quasimode, each advised set fires its applicable subset (its
// maximal applicable portion; rules never compete, so that subset is
// unique). An advised set with nothing applicable fires the empty set and
// stutters. Under maximal parallelism, all applicable rules fire, and a
// configuration with no applicable rule halts (no successors).
class Stepper {
 public:
  Stepper(const Bps& p, const ModeSpec& mode);

  std::vector<Step> successors(const SymbolSet& w) const;
  const Bps& system() const { return *system_; }
  bool max_parallel() const { return max_parallel_; }
  const std::vector<RuleSet>& advised() const { return advised_; }

 private:
  const Bps* system_;
  bool max_parallel_;
  std::vector<RuleSet> advised_;
};

std::vector<Step> step(const Bps& p, const ModeSpec& mode, const SymbolSet& w);

// Alphabet union by name (left order first), rule union by id. Rules sharing
// an id must be identical up to symbol renaming.
struct BpsUnion {
  Bps system;
  std::vector<std::size_t> symbol_map1, symbol_map2;  // old symbol -> new
  std::vector<std::size_t> rule_map1, rule_map2;      // old rule -> new
};

BpsUnion union_bps(const Bps& p1, const Bps& p2);

// Orders rule sets by their id lists; used for reproducible tie-breaking.
bool rule_set_id_less(const Bps& p, const RuleSet& a, const RuleSet& b);

}  // namespace bps
