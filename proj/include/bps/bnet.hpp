#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bps/alphabet.hpp"
#include "bps/bitset.hpp"
#include "bps/formula.hpp"

namespace bps {

// Boolean network: one update formula per variable, over the variables.
struct BoolNetwork {
  BoolNetwork() = default;
  BoolNetwork(Alphabet vars, std::vector<Formula> update);

  Alphabet vars;
  std::vector<Formula> update;
};

// A set of variable blocks; each step updates exactly the variables of one
// chosen block. Synchronous is { all }, asynchronous is the singletons.
class BooleanMode {
 public:
  enum class Kind { Synchronous, Asynchronous, Explicit };

  static BooleanMode synchronous() { return BooleanMode(Kind::Synchronous, {}); }
  static BooleanMode asynchronous() { return BooleanMode(Kind::Asynchronous, {}); }
  static BooleanMode explicit_blocks(std::vector<SymbolSet> blocks);

  Kind kind() const { return kind_; }
  std::vector<SymbolSet> blocks(std::size_t num_vars) const;

 private:
  BooleanMode(Kind kind, std::vector<SymbolSet> blocks)
      : kind_(kind), blocks_(std::move(blocks)) {}
  Kind kind_;
  std::vector<SymbolSet> blocks_;
};

// Successors of s: one per mode block, updating exactly that block's
// variables from s. Deduplicated, canonical order.
std::vector<SymbolSet> bn_step(const BoolNetwork& f, const BooleanMode& m, const SymbolSet& s);

enum class FreezePolarity {
  // Controls present by default; dropping u0 freezes to 0, dropping u1
  // freezes to 1: f' = (f & u0) | !u1.
  InactiveHigh,
  // Controls absent by default; adding u0 freezes to 0, adding u1 freezes
  // to 1: f' = (f | u1) & !u0.
  ActiveHigh,
};

struct FreezePair {
  std::size_t var;  // controlled variable, index into the BCN alphabet
  std::size_t u0;   // freeze-to-0 input
  std::size_t u1;   // freeze-to-1 input
};

// Boolean control network. The alphabet lists the state variables X first,
// then the control inputs U; update formulas range over X ∪ U. States are
// sets over X alone, controls are sets over the full alphabet with members
// in the U range.
class Bcn {
 public:
  Bcn() = default;
  Bcn(Alphabet alphabet, std::size_t num_vars, std::vector<Formula> update,
      std::vector<FreezePair> freeze_pairs = {},
      std::optional<FreezePolarity> polarity = std::nullopt);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t num_vars() const { return num_vars_; }
  std::size_t num_controls() const { return alphabet_.size() - num_vars_; }
  const std::vector<Formula>& update() const { return update_; }
  Alphabet var_alphabet() const;

  SymbolSet x_mask() const;
  SymbolSet u_mask() const;

  const std::vector<FreezePair>& freeze_pairs() const { return freeze_pairs_; }
  std::optional<FreezePolarity> polarity() const { return polarity_; }
  // Every control input belongs to a freeze pair.
  bool freeze_structured() const;

  SymbolSet control_none() const { return SymbolSet(alphabet_.size()); }
  // All 2^|U| controls, canonical order. Throws above the limit.
  std::vector<SymbolSet> all_controls(std::size_t max_controls = 20) const;

  void validate_control(const SymbolSet& mu) const;  // members must lie in U
  // Double freeze of one variable: both inputs absent (inactive-high) or
  // both present (active-high). Always false without a known polarity.
  bool control_conflicts(const SymbolSet& mu) const;

  SymbolSet lift_state(const SymbolSet& s) const;     // X universe -> full
  SymbolSet project_state(const SymbolSet& w) const;  // full -> X universe

 private:
  Alphabet alphabet_;
  std::size_t num_vars_ = 0;
  std::vector<Formula> update_;
  std::vector<FreezePair> freeze_pairs_;
  std::optional<FreezePolarity> polarity_;
};

// The Boolean network obtained by fixing the control inputs to mu.
BoolNetwork bcn_apply(const Bcn& b, const SymbolSet& mu);

// Adds a freeze pair u0/u1 for every controllable variable and wraps its
// update formula per the chosen polarity. Control names follow the variable
// name: x -> ux0/ux1, x1 -> u1_0/u1_1.
Bcn make_freeze_bcn(const BoolNetwork& f, const SymbolSet& controllable,
                    FreezePolarity polarity);

// Rebuilds a Bcn from its control table: per variable, the disjunction over
// all controls mu of (exact control description ∧ that network's update).
// `table` must contain every subset of the control inputs exactly once;
// keys are over the combined alphabet, networks over its X prefix.
Bcn bcn_expand(const Alphabet& combined, std::size_t num_vars,
               const std::vector<std::pair<SymbolSet, BoolNetwork>>& table);

// Relation on controls constraining consecutive controls of a trajectory.
class ControlMode {
 public:
  enum class Kind { Any, Tcs, Acs, Explicit };

  static ControlMode any() { return ControlMode(Kind::Any); }
  static ControlMode tcs() { return ControlMode(Kind::Tcs); }
  static ControlMode acs() { return ControlMode(Kind::Acs); }
  static ControlMode explicit_pairs(std::vector<std::pair<SymbolSet, SymbolSet>> pairs);

  Kind kind() const { return kind_; }
  const std::vector<std::pair<SymbolSet, SymbolSet>>& pairs() const;

 private:
  explicit ControlMode(Kind kind) : kind_(kind) {}
  Kind kind_;
  std::vector<std::pair<SymbolSet, SymbolSet>> pairs_;
};

// Indices of the freeze pairs a control acts on, in either polarity.
// Universe = number of freeze pairs.
SymbolSet control_idx(const Bcn& b, const SymbolSet& mu);

// Explicit enumeration of the relation, deduplicated and canonically
// ordered. TCS keeps controls that pick exactly one input per pair; ACS
// keeps conflict-free controls with a growing acted-on index set. Both
// require a freeze-structured control alphabet and read presence as action
// (the active-high reading).
//
// Double-freeze controls are rejected by default when the polarity is
// known: enumerated relations skip them, explicit pairs raise an error.
// `allow_conflicting` overrides both.
std::vector<std::pair<SymbolSet, SymbolSet>> control_mode_pairs(
    const ControlMode& cm, const Bcn& b, bool allow_conflicting = false,
    std::size_t max_pairs_log2 = 20);

// One network step of state s (over X) under control mu.
std::vector<SymbolSet> bcn_trajectory_step(const Bcn& b, const BooleanMode& m,
                                           const SymbolSet& s, const SymbolSet& mu);

}  // namespace bps
