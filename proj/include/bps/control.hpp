#pragma once

#include <string>
#include <vector>

#include "bps/bnet.hpp"
#include "bps/reach.hpp"
#include "bps/translate.hpp"

namespace bps {

// Control-sequence inference: drive every start state into the targets under
// synchronous updates, with a freely chosen control at every step. States
// are over the variables X.
struct CofaseProblem {
  Bcn bcn;
  std::vector<SymbolSet> starts;
  std::vector<SymbolSet> targets;
};

// Generalized sequential controllability: an explicit update mode and a
// relation constraining consecutive controls.
struct SeqControlProblem {
  Bcn bcn;
  BooleanMode mode;
  ControlMode control_mode;
  std::vector<SymbolSet> starts;
  std::vector<SymbolSet> targets;
};

struct ControlOptions {
  std::size_t max_vars = 20;
  std::size_t max_controls = 12;
  bool stop_on_first_failure = false;
  // Controls freezing one variable in both directions are skipped when
  // enumerating and rejected in explicit relations, unless set.
  bool allow_conflicting_controls = false;
};

struct ControlStep {
  SymbolSet control;  // control governing this step, over the full alphabet
  SymbolSet state;    // state after the step, over X
};

struct ControlWitness {
  SymbolSet start;
  WitnessStatus status = WitnessStatus::Unreachable;
  std::vector<ControlStep> steps;
  const SymbolSet& final_state() const { return steps.empty() ? start : steps.back().state; }
};

struct ControlResult {
  bool controllable = false;
  std::vector<ControlWitness> witnesses;
  SearchStats stats;
  std::string diagnostic;  // non-empty when a structural condition forced the answer
};

// Breadth-first search over the state space with one edge per control,
// shortest witnesses, deterministic tie-breaking. A start state already in
// the targets counts with an empty witness.
ControlResult solve_cofase(const CofaseProblem& p, const ControlOptions& options = {});

// Breadth-first search over (state, control to apply next). The initial
// control must be the left element of some relation pair; consecutive
// controls must form relation pairs; the final step's control needs no
// outgoing pair. Targets are checked on every state produced, including the
// start states.
ControlResult solve_seqcontrol(const SeqControlProblem& p, const ControlOptions& options = {});

void replay_witness(const CofaseProblem& p, const ControlWitness& w);
void replay_witness(const SeqControlProblem& p, const ControlWitness& w);

struct CrosscheckReport {
  bool agree = false;
  bool direct_answer = false;
  bool composite_answer = false;
  // Every control used in the relation can keep itself; when false, the
  // composite encoding may admit evolutions whose control part lingers
  // without a matching relation pair, and the two routes can diverge.
  bool relation_reflexive_on_used = true;
  struct PerStart {
    SymbolSet start;
    bool direct_ok = false;
    bool composite_ok = false;
  };
  std::vector<PerStart> per_start;
};

// Solves the same problem by translating it to composite reachability and
// compares with the direct product search. Exact control guards keep the
// composite faithful; the literal guard-1 construction is available for
// comparison and is expected to over-reach.
CrosscheckReport crosscheck_via_composite(const SeqControlProblem& p,
                                          const ControlOptions& options = {},
                                          GuardStyle style = GuardStyle::ExactGuard);

}  // namespace bps
