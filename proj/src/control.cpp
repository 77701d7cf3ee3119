#include "bps/control.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

#include "bps/error.hpp"

namespace bps {

namespace {

void check_limits(const Bcn& b, const ControlOptions& options) {
  if (b.num_vars() > options.max_vars)
    throw ModelError("network has " + std::to_string(b.num_vars()) +
                     " variables, above the explicit-search limit of " +
                     std::to_string(options.max_vars));
  if (b.num_controls() > options.max_controls)
    throw ModelError("network has " + std::to_string(b.num_controls()) +
                     " control inputs, above the explicit-search limit of " +
                     std::to_string(options.max_controls));
}

void check_states(const Bcn& b, const std::vector<SymbolSet>& states) {
  for (const auto& s : states)
    if (s.universe() != b.num_vars())
      throw ModelError("problem state is not over the network variables");
}

bool in_targets(const std::vector<SymbolSet>& targets, const SymbolSet& s) {
  return std::find(targets.begin(), targets.end(), s) != targets.end();
}

// Synchronous image of s under mu, evaluated over the joined configuration.
SymbolSet sync_image(const Bcn& b, const SymbolSet& w_joined, const SymbolSet& s) {
  SymbolSet next(s.universe());
  for (std::size_t x = 0; x < b.num_vars(); ++x)
    next.assign(x, b.update()[x].eval(w_joined));
  return next;
}

}  // namespace

ControlResult solve_cofase(const CofaseProblem& p, const ControlOptions& options) {
  check_limits(p.bcn, options);
  check_states(p.bcn, p.starts);
  check_states(p.bcn, p.targets);

  std::vector<SymbolSet> controls;
  for (const auto& mu : p.bcn.all_controls(options.max_controls))
    if (options.allow_conflicting_controls || !p.bcn.control_conflicts(mu))
      controls.push_back(mu);
  ControlResult result;
  result.controllable = true;
  bool failed = false;

  struct Parent {
    SymbolSet state;
    SymbolSet control;
  };

  for (const auto& start : p.starts) {
    ControlWitness w;
    w.start = start;
    if (failed && options.stop_on_first_failure) {
      w.status = WitnessStatus::Skipped;
      result.witnesses.push_back(std::move(w));
      continue;
    }
    if (in_targets(p.targets, start)) {
      w.status = WitnessStatus::Reached;
      result.witnesses.push_back(std::move(w));
      continue;
    }

    std::unordered_map<SymbolSet, Parent, IndexSetHash<SymbolTag>> parent;
    std::deque<SymbolSet> frontier;
    parent.emplace(start, Parent{start, p.bcn.control_none()});
    frontier.push_back(start);
    std::optional<SymbolSet> hit;

    while (!frontier.empty() && !hit) {
      SymbolSet cur = frontier.front();
      frontier.pop_front();
      ++result.stats.states_explored;
      SymbolSet lifted = p.bcn.lift_state(cur);
      for (const auto& mu : controls) {
        SymbolSet next = sync_image(p.bcn, lifted | mu, cur);
        if (parent.count(next)) continue;
        parent.emplace(next, Parent{cur, mu});
        if (in_targets(p.targets, next)) {
          hit = next;
          break;
        }
        frontier.push_back(next);
      }
    }

    if (hit) {
      w.status = WitnessStatus::Reached;
      std::vector<ControlStep> rev;
      SymbolSet cur = *hit;
      while (!(cur == start)) {
        const Parent& e = parent.at(cur);
        rev.push_back({e.control, cur});
        cur = e.state;
      }
      w.steps.assign(rev.rbegin(), rev.rend());
    } else {
      w.status = WitnessStatus::Unreachable;
      failed = true;
    }
    result.witnesses.push_back(std::move(w));
  }
  result.controllable = !failed;
  return result;
}

ControlResult solve_seqcontrol(const SeqControlProblem& p, const ControlOptions& options) {
  check_limits(p.bcn, options);
  check_states(p.bcn, p.starts);
  check_states(p.bcn, p.targets);

  auto pairs =
      control_mode_pairs(p.control_mode, p.bcn, options.allow_conflicting_controls);

  // Controls occurring in the relation; only these are ever searched.
  std::vector<SymbolSet> initial_controls;
  std::map<SymbolSet, std::vector<SymbolSet>> outgoing;
  for (const auto& [mu, nu] : pairs) outgoing[mu].push_back(nu);
  for (const auto& [mu, succ] : outgoing) {
    (void)succ;
    initial_controls.push_back(mu);
  }

  ControlResult result;
  result.controllable = true;
  if (pairs.empty()) result.diagnostic = "the control relation is empty; only start states already in the targets are controllable";
  bool failed = false;

  using Key = std::pair<SymbolSet, SymbolSet>;  // (state, control to apply next)
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return k.first.hash() * 1000003u ^ k.second.hash();
    }
  };
  struct Parent {
    Key from;
    bool is_root = false;
  };

  for (const auto& start : p.starts) {
    ControlWitness w;
    w.start = start;
    if (failed && options.stop_on_first_failure) {
      w.status = WitnessStatus::Skipped;
      result.witnesses.push_back(std::move(w));
      continue;
    }
    if (in_targets(p.targets, start)) {
      w.status = WitnessStatus::Reached;
      result.witnesses.push_back(std::move(w));
      continue;
    }

    std::unordered_map<Key, Parent, KeyHash> parent;
    std::deque<Key> frontier;
    for (const auto& mu : initial_controls) {
      Key k{start, mu};
      parent.emplace(k, Parent{k, true});
      frontier.push_back(k);
    }

    // A hit is the final network step: from `at`, stepping under at.second
    // produced `state` in the targets.
    std::optional<std::pair<Key, SymbolSet>> hit;

    while (!frontier.empty() && !hit) {
      Key cur = frontier.front();
      frontier.pop_front();
      ++result.stats.states_explored;
      auto out_it = outgoing.find(cur.second);
      for (const auto& next_state :
           bcn_trajectory_step(p.bcn, p.mode, cur.first, cur.second)) {
        if (in_targets(p.targets, next_state)) {
          hit = {cur, next_state};
          break;
        }
        if (out_it == outgoing.end()) continue;
        for (const auto& nu : out_it->second) {
          Key k{next_state, nu};
          if (parent.count(k)) continue;
          parent.emplace(k, Parent{cur, false});
          frontier.push_back(k);
        }
      }
    }

    if (hit) {
      w.status = WitnessStatus::Reached;
      std::vector<ControlStep> rev;
      rev.push_back({hit->first.second, hit->second});
      Key cur = hit->first;
      while (!parent.at(cur).is_root) {
        const Parent& e = parent.at(cur);
        rev.push_back({e.from.second, cur.first});
        cur = e.from;
      }
      w.steps.assign(rev.rbegin(), rev.rend());
    } else {
      w.status = WitnessStatus::Unreachable;
      failed = true;
    }
    result.witnesses.push_back(std::move(w));
  }
  result.controllable = !failed;
  return result;
}

void replay_witness(const CofaseProblem& p, const ControlWitness& w) {
  if (w.status != WitnessStatus::Reached) {
    if (!w.steps.empty()) throw ModelError("non-reaching witness carries steps");
    return;
  }
  SymbolSet cur = w.start;
  for (const auto& s : w.steps) {
    p.bcn.validate_control(s.control);
    auto succ = bcn_trajectory_step(p.bcn, BooleanMode::synchronous(), cur, s.control);
    if (std::find(succ.begin(), succ.end(), s.state) == succ.end())
      throw ModelError("witness step is not a valid network step");
    cur = s.state;
  }
  if (!in_targets(p.targets, cur))
    throw ModelError("witness does not end in a target state");
}

void replay_witness(const SeqControlProblem& p, const ControlWitness& w) {
  if (w.status != WitnessStatus::Reached) {
    if (!w.steps.empty()) throw ModelError("non-reaching witness carries steps");
    return;
  }
  auto pairs = control_mode_pairs(p.control_mode, p.bcn, true);
  auto in_relation = [&](const SymbolSet& mu, const SymbolSet& nu) {
    return std::binary_search(pairs.begin(), pairs.end(), std::make_pair(mu, nu));
  };
  auto left_of_some = [&](const SymbolSet& mu) {
    for (const auto& [a, b] : pairs)
      if (a == mu) return true;
    return false;
  };

  SymbolSet cur = w.start;
  for (std::size_t i = 0; i < w.steps.size(); ++i) {
    const auto& s = w.steps[i];
    p.bcn.validate_control(s.control);
    if (i == 0) {
      if (!left_of_some(s.control))
        throw ModelError("initial control is not the left element of any relation pair");
    } else if (!in_relation(w.steps[i - 1].control, s.control)) {
      throw ModelError("consecutive controls violate the control relation");
    }
    auto succ = bcn_trajectory_step(p.bcn, p.mode, cur, s.control);
    if (std::find(succ.begin(), succ.end(), s.state) == succ.end())
      throw ModelError("witness step is not a valid network step");
    cur = s.state;
  }
  if (!in_targets(p.targets, cur))
    throw ModelError("witness does not end in a target state");
}

CrosscheckReport crosscheck_via_composite(const SeqControlProblem& p,
                                          const ControlOptions& options,
                                          GuardStyle style) {
  // Per-start comparison needs every start evaluated on both routes.
  ControlOptions full = options;
  full.stop_on_first_failure = false;
  ControlResult direct = solve_seqcontrol(p, full);

  auto pairs =
      control_mode_pairs(p.control_mode, p.bcn, options.allow_conflicting_controls);
  CompositeBps composite = seqcontrol_composite(p.bcn, p.mode, pairs, style);

  CrosscheckReport report;
  report.direct_answer = direct.controllable;

  // Used controls and relation reflexivity on them.
  std::vector<SymbolSet> lefts;
  {
    std::vector<SymbolSet> used;
    for (const auto& [mu, nu] : pairs) {
      used.push_back(mu);
      used.push_back(nu);
      lefts.push_back(mu);
    }
    std::sort(lefts.begin(), lefts.end());
    lefts.erase(std::unique(lefts.begin(), lefts.end()), lefts.end());
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    for (const auto& mu : used)
      if (!std::binary_search(pairs.begin(), pairs.end(), std::make_pair(mu, mu)))
        report.relation_reflexive_on_used = false;
  }

  // Targets: configurations whose variable part equals a target state.
  std::vector<Formula> disjuncts;
  for (const auto& t : p.targets)
    disjuncts.push_back(exact_set_formula(p.bcn.lift_state(t), composite.x_symbols));
  TargetSpec target = TargetSpec::formula(Formula::any_of(std::move(disjuncts)));

  // One lifted start per (start, admissible initial control).
  std::vector<SymbolSet> lifted_starts;
  for (const auto& s : p.starts)
    for (const auto& mu : lefts) lifted_starts.push_back(p.bcn.lift_state(s) | mu);

  ReachOptions reach_options;
  reach_options.max_symbols =
      std::max<std::size_t>(composite.bps.alphabet().size(), reach_options.max_symbols);
  ReachProblem rp{composite.bps, ModeSpec::from_quasimode(composite.quasimode),
                  lifted_starts, target};
  ReachResult reach = solve_reach(rp, reach_options);

  report.composite_answer = true;
  for (std::size_t i = 0; i < p.starts.size(); ++i) {
    CrosscheckReport::PerStart entry;
    entry.start = p.starts[i];
    entry.direct_ok = direct.witnesses[i].status == WitnessStatus::Reached;
    entry.composite_ok = in_targets(p.targets, p.starts[i]);
    for (std::size_t j = 0; j < lefts.size(); ++j) {
      const auto& w = reach.witnesses[i * lefts.size() + j];
      if (w.status == WitnessStatus::Reached) entry.composite_ok = true;
    }
    if (!entry.composite_ok) report.composite_answer = false;
    report.per_start.push_back(std::move(entry));
  }
  report.agree = report.direct_answer == report.composite_answer;
  return report;
}

}  // namespace bps
