#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bps/bnet.hpp"
#include "bps/system.hpp"

namespace bps {

// Translation of a Boolean network: per variable x, a pair of rules
//   set_<x>: {} -> {x} | f_x      clr_<x>: {x} -> {} | !f_x
// over the alphabet X.
Bps bn_to_bps(const BoolNetwork& f);

// One advised rule set per mode block, containing both rules of every
// selected variable. `translation` must come from bn_to_bps.
QuasiMode boolean_mode_to_quasimode(const BooleanMode& m, const Bps& translation);

// A controlled system together with the master component driving its
// control inputs, running as one system under a product quasimode.
struct CompositeBps {
  Bps bps;
  QuasiMode quasimode;
  SymbolSet x_symbols;  // over bps alphabet
  SymbolSet u_symbols;
};

// Network rules with guards over X ∪ U, joined with the control component
//   u_del_<u>: {u} -> {} | 1     u_add_<u>: {} -> {u} | 1
// under the quasimode  M̃ ×̇ ({all deletions} ×̇ powerset(additions)):
// every step erases the control part and reintroduces any subset of it.
CompositeBps bcn_to_composite(const Bcn& b, const BooleanMode& m);

enum class GuardStyle {
  // cm rules fire exactly when the control part equals the pair's left
  // element.
  ExactGuard,
  // Guard 1: a rule also fires when the control part strictly contains the
  // left element, which admits control parts matching no relation pair.
  Literal,
};

// Control-relation component: one rule per relation pair,
//   cm_<k>: mu1 -> mu2, advised one at a time (family of singletons).
struct ControlModeTranslation {
  Bps pu;  // over the control alphabet U
  QuasiMode quasimode;
  std::vector<std::pair<SymbolSet, SymbolSet>> pairs;  // canonical, U-local
};

ControlModeTranslation control_mode_to_pu(
    const Bcn& b, const std::vector<std::pair<SymbolSet, SymbolSet>>& pairs,
    GuardStyle style = GuardStyle::ExactGuard);

// Full composite for a controlled network with a control relation: network
// rules joined with the relation component, under M̃ ×̇ {singleton cm sets}.
CompositeBps seqcontrol_composite(const Bcn& b, const BooleanMode& m,
                                  const std::vector<std::pair<SymbolSet, SymbolSet>>& pairs,
                                  GuardStyle style = GuardStyle::ExactGuard);

struct Reaction {
  std::string id;
  SymbolSet reactants;
  SymbolSet inhibitors;
  SymbolSet products;
};

struct ReactionSystem {
  ReactionSystem() = default;
  ReactionSystem(Alphabet species, std::vector<Reaction> reactions);

  Alphabet species;
  std::vector<Reaction> reactions;

  bool enabled(const Reaction& a, const SymbolSet& w) const;
  // Union of the products of the enabled reactions; everything not
  // sustained disappears.
  SymbolSet result(const SymbolSet& w) const;
};

// Per reaction a: {} -> P_a | (reactants present, inhibitors absent), plus a
// degradation rule deg_<x>: {x} -> {} | 1 per species. Intended to run under
// maximal parallelism.
Bps rs_to_bps(const ReactionSystem& rs);

}  // namespace bps
