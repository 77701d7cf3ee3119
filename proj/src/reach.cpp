#include "bps/reach.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "bps/error.hpp"

namespace bps {

TargetSpec TargetSpec::states(std::vector<SymbolSet> states) {
  TargetSpec t;
  std::sort(states.begin(), states.end());
  states.erase(std::unique(states.begin(), states.end()), states.end());
  t.states_ = std::move(states);
  return t;
}

TargetSpec TargetSpec::formula(Formula f) {
  TargetSpec t;
  t.formula_ = std::move(f);
  return t;
}

const Formula& TargetSpec::target_formula() const {
  if (!formula_) throw ModelError("target is not a formula");
  return *formula_;
}

const std::vector<SymbolSet>& TargetSpec::target_states() const {
  if (formula_) throw ModelError("target is a formula");
  return states_;
}

bool TargetSpec::matches(const SymbolSet& w) const {
  if (formula_) return formula_->eval(w);
  return std::binary_search(states_.begin(), states_.end(), w);
}

namespace {

void check_problem(const Bps& p, const std::vector<SymbolSet>& states,
                   const ReachOptions& options) {
  if (p.alphabet().size() > options.max_symbols)
    throw ModelError("alphabet has " + std::to_string(p.alphabet().size()) +
                     " symbols, above the explicit-search limit of " +
                     std::to_string(options.max_symbols) +
                     "; raise the limit to search this system");
  for (const auto& s : states)
    if (s.universe() != p.alphabet().size())
      throw ModelError("state is not over the system alphabet");
}

struct ParentEdge {
  SymbolSet parent;
  RuleSet fired;
};

}  // namespace

ReachResult solve_reach(const ReachProblem& p, const ReachOptions& options) {
  check_problem(p.bps, p.starts, options);
  if (!p.targets.is_formula())
    for (const auto& t : p.targets.target_states())
      if (t.universe() != p.bps.alphabet().size())
        throw ModelError("target state is not over the system alphabet");

  Stepper stepper(p.bps, p.mode);
  ReachResult result;
  result.reachable = true;
  bool failed = false;

  for (const auto& start : p.starts) {
    ReachWitness w;
    w.start = start;
    if (failed && options.stop_on_first_failure) {
      w.status = WitnessStatus::Skipped;
      result.witnesses.push_back(std::move(w));
      continue;
    }

    if (p.targets.matches(start)) {
      w.status = WitnessStatus::Reached;
      result.witnesses.push_back(std::move(w));
      continue;
    }

    std::unordered_map<SymbolSet, ParentEdge, IndexSetHash<SymbolTag>> parent;
    std::deque<SymbolSet> frontier;
    parent.emplace(start, ParentEdge{start, RuleSet(p.bps.num_rules())});
    frontier.push_back(start);
    std::optional<SymbolSet> hit;

    while (!frontier.empty() && !hit) {
      SymbolSet cur = frontier.front();
      frontier.pop_front();
      ++result.stats.states_explored;
      for (const auto& step : stepper.successors(cur)) {
        if (parent.count(step.successor)) continue;
        parent.emplace(step.successor, ParentEdge{cur, step.fired});
        if (p.targets.matches(step.successor)) {
          hit = step.successor;
          break;
        }
        frontier.push_back(step.successor);
      }
    }

    if (hit) {
      w.status = WitnessStatus::Reached;
      std::vector<ReachStep> rev;
      SymbolSet cur = *hit;
      while (!(cur == start)) {
        const ParentEdge& e = parent.at(cur);
        rev.push_back({e.fired, cur});
        cur = e.parent;
      }
      w.steps.assign(rev.rbegin(), rev.rend());
    } else {
      w.status = WitnessStatus::Unreachable;
      result.reachable = false;
      failed = true;
    }
    result.witnesses.push_back(std::move(w));
  }
  if (failed) result.reachable = false;
  return result;
}

void replay_witness(const ReachProblem& p, const ReachWitness& w) {
  if (w.status == WitnessStatus::Skipped) return;
  if (w.status == WitnessStatus::Unreachable) {
    if (!w.steps.empty()) throw ModelError("unreachable witness carries steps");
    return;
  }
  Stepper stepper(p.bps, p.mode);
  SymbolSet cur = w.start;
  for (const auto& s : w.steps) {
    // The fired set must be realizable at this state under the mode...
    RuleSet app = applicable_rules(p.bps, cur);
    bool realizable = false;
    if (p.mode.is_max_parallel()) {
      realizable = s.fired == app;
    } else {
      for (const auto& m : stepper.advised())
        if ((m & app) == s.fired) {
          realizable = true;
          break;
        }
    }
    if (!realizable)
      throw ModelError("witness step fires " + p.bps.format_rule_set(s.fired) +
                       ", which no advised set yields at " +
                       p.bps.alphabet().format_set(cur));
    // ...and re-applying it must reproduce the recorded state.
    SymbolSet next = apply_rule_set(p.bps, cur, s.fired);
    if (next != s.state)
      throw ModelError("witness step does not reproduce the recorded state");
    cur = next;
  }
  if (!p.targets.matches(cur))
    throw ModelError("witness does not end in a target state");
}

StateGraph export_state_graph(const Bps& p, const ModeSpec& mode,
                              const std::vector<SymbolSet>& roots,
                              const ReachOptions& options) {
  check_problem(p, roots, options);
  Stepper stepper(p, mode);

  std::unordered_set<SymbolSet, IndexSetHash<SymbolTag>> seen;
  std::deque<SymbolSet> frontier;
  for (const auto& r : roots)
    if (seen.insert(r).second) frontier.push_back(r);

  std::vector<SymbolSet> nodes;
  std::vector<std::pair<std::pair<SymbolSet, SymbolSet>, RuleSet>> raw_edges;
  while (!frontier.empty()) {
    SymbolSet cur = frontier.front();
    frontier.pop_front();
    nodes.push_back(cur);
    for (const auto& step : stepper.successors(cur)) {
      raw_edges.push_back({{cur, step.successor}, step.fired});
      if (seen.insert(step.successor).second) frontier.push_back(step.successor);
    }
  }

  StateGraph g;
  std::sort(nodes.begin(), nodes.end());
  g.nodes = std::move(nodes);
  std::unordered_map<SymbolSet, std::size_t, IndexSetHash<SymbolTag>> index;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) index.emplace(g.nodes[i], i);

  for (auto& [ends, fired] : raw_edges)
    g.edges.push_back({index.at(ends.first), index.at(ends.second), fired});
  std::sort(g.edges.begin(), g.edges.end(),
            [&](const StateGraph::Edge& a, const StateGraph::Edge& b) {
              if (a.from != b.from) return a.from < b.from;
              if (a.to != b.to) return a.to < b.to;
              return a.fired < b.fired;
            });
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end(),
                            [](const StateGraph::Edge& a, const StateGraph::Edge& b) {
                              return a.from == b.from && a.to == b.to && a.fired == b.fired;
                            }),
                g.edges.end());
  return g;
}

std::string to_dot(const StateGraph& g, const Bps& p, const std::string& name) {
  std::string out = "digraph " + name + " {\n";
  out += "  node [shape=box];\n";
  for (const auto& n : g.nodes) out += "  \"" + n.to_bitstring() + "\";\n";
  for (const auto& e : g.edges) {
    std::string label;
    bool first = true;
    for (const auto& id : p.rule_ids(e.fired)) {
      if (!first) label += ",";
      label += id;
      first = false;
    }
    out += "  \"" + g.nodes[e.from].to_bitstring() + "\" -> \"" +
           g.nodes[e.to].to_bitstring() + "\" [label=\"" + label + "\"];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace bps
