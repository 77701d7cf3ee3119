#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bps/system.hpp"

namespace bps {

// Target states, either listed or described by a formula. A formula target
// is never enumerated; membership is decided per state.
class TargetSpec {
 public:
  static TargetSpec states(std::vector<SymbolSet> states);
  static TargetSpec formula(Formula f);

  bool is_formula() const { return formula_.has_value(); }
  const Formula& target_formula() const;
  const std::vector<SymbolSet>& target_states() const;

  bool matches(const SymbolSet& w) const;

 private:
  TargetSpec() = default;
  std::optional<Formula> formula_;
  std::vector<SymbolSet> states_;
};

struct ReachProblem {
  Bps bps;
  ModeSpec mode;
  std::vector<SymbolSet> starts;
  TargetSpec targets;
};

struct ReachOptions {
  // Explicit search refuses alphabets above this size; raise it for large
  // but shallow systems (translated automata).
  std::size_t max_symbols = 22;
  // Stop at the first start state that cannot reach a target; remaining
  // starts are reported as skipped.
  bool stop_on_first_failure = false;
};

enum class WitnessStatus { Reached, Unreachable, Skipped };

struct ReachStep {
  RuleSet fired;
  SymbolSet state;
};

// Shortest evolution from one start state into the targets, or the absence
// of one. Step i leads from the previous state to steps[i].state by firing
// steps[i].fired.
struct ReachWitness {
  SymbolSet start;
  WitnessStatus status = WitnessStatus::Unreachable;
  std::vector<ReachStep> steps;
  const SymbolSet& final_state() const { return steps.empty() ? start : steps.back().state; }
};

struct SearchStats {
  std::size_t states_explored = 0;
};

struct ReachResult {
  bool reachable = false;  // every start reaches some target
  std::vector<ReachWitness> witnesses;
  SearchStats stats;
};

// Breadth-first search over the full successor relation, one independent
// search per start state. A start state already in the targets counts with
// an empty witness. Witnesses are shortest; ties break lexicographically by
// fired rule ids.
ReachResult solve_reach(const ReachProblem& p, const ReachOptions& options = {});

// Re-derives every step of the witness from the problem; throws ModelError
// on any mismatch.
void replay_witness(const ReachProblem& p, const ReachWitness& w);

struct StateGraph {
  std::vector<SymbolSet> nodes;  // canonical order
  struct Edge {
    std::size_t from, to;  // indices into nodes
    RuleSet fired;
  };
  std::vector<Edge> edges;
};

// States reachable from the roots with their labeled transitions.
StateGraph export_state_graph(const Bps& p, const ModeSpec& mode,
                              const std::vector<SymbolSet>& roots,
                              const ReachOptions& options = {});

// DOT rendering; node labels are bitstrings in alphabet order, edge labels
// comma-joined rule ids.
std::string to_dot(const StateGraph& g, const Bps& p, const std::string& name = "bps");

}  // namespace bps
