#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "bps/error.hpp"
#include "bps/reach.hpp"
#include "bps/translate.hpp"
#include "testutil.hpp"

using namespace bps;
using testutil::bits;

namespace {

std::set<std::pair<std::string, std::string>> edge_pairs(const StateGraph& g) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& e : g.edges)
    out.insert({g.nodes[e.from].to_bitstring(), g.nodes[e.to].to_bitstring()});
  return out;
}

}  // namespace

TEST_CASE("worked two-rule run is reachable with a two-step witness") {
  Bps p = testutil::two_rule_bps();
  ReachProblem problem{p, ModeSpec::max_parallel(), {bits("11")},
                       TargetSpec::states({bits("00")})};
  auto result = solve_reach(problem);
  CHECK(result.reachable);
  REQUIRE(result.witnesses.size() == 1);
  CHECK(result.witnesses[0].status == WitnessStatus::Reached);
  CHECK(result.witnesses[0].steps.size() == 2);
  replay_witness(problem, result.witnesses[0]);
}

TEST_CASE("start state inside the targets counts immediately") {
  Bps p = testutil::two_rule_bps();
  ReachProblem problem{p, ModeSpec::from_quasimode(QuasiMode::none(p.num_rules())),
                       {bits("01")}, TargetSpec::states({bits("01")})};
  auto result = solve_reach(problem);
  CHECK(result.reachable);
  CHECK(result.witnesses[0].steps.empty());
  replay_witness(problem, result.witnesses[0]);
}

TEST_CASE("empty advised family reaches exactly the start states") {
  testutil::Rng rng(testutil::test_seed());
  for (int round = 0; round < 60; ++round) {
    Bps p = testutil::random_bps(rng, testutil::pick(rng, 1, 4), testutil::pick(rng, 0, 4));
    std::size_t n = p.alphabet().size();
    std::vector<SymbolSet> starts{testutil::random_subset(rng, n)};
    std::vector<SymbolSet> targets;
    for (std::size_t i = 0, k = testutil::pick(rng, 0, 3); i < k; ++i)
      targets.push_back(testutil::random_subset(rng, n));
    ReachProblem problem{p, ModeSpec::from_quasimode(QuasiMode::none(p.num_rules())),
                         starts, TargetSpec::states(targets)};
    bool contained =
        std::find(targets.begin(), targets.end(), starts[0]) != targets.end();
    CHECK(solve_reach(problem).reachable == contained);
  }
}

TEST_CASE("answers match the closure oracle on random systems") {
  testutil::Rng rng(testutil::test_seed() + 1);
  for (int round = 0; round < 80; ++round) {
    std::size_t n = testutil::pick(rng, 1, 4);
    Bps p = testutil::random_bps(rng, n, testutil::pick(rng, 0, 5));
    bool maxpar = testutil::chance(rng, 0.3);
    QuasiMode q = testutil::random_quasimode(rng, p.num_rules());
    ModeSpec mode = maxpar ? ModeSpec::max_parallel() : ModeSpec::from_quasimode(q);

    Stepper stepper(p, mode);
    auto closure = testutil::oracle_closure(n, [&](const SymbolSet& s) {
      std::vector<SymbolSet> out;
      for (const auto& st : stepper.successors(s)) out.push_back(st.successor);
      return out;
    });

    SymbolSet start = testutil::random_subset(rng, n);
    SymbolSet target = testutil::random_subset(rng, n);
    ReachProblem problem{p, mode, {start}, TargetSpec::states({target})};
    auto result = solve_reach(problem);
    REQUIRE(result.reachable ==
            closure[testutil::value_of(start)][testutil::value_of(target)]);
    for (const auto& w : result.witnesses) replay_witness(problem, w);
  }
}

TEST_CASE("witness minimality against breadth-first distances") {
  testutil::Rng rng(testutil::test_seed() + 2);
  for (int round = 0; round < 40; ++round) {
    std::size_t n = testutil::pick(rng, 1, 4);
    Bps p = testutil::random_bps(rng, n, testutil::pick(rng, 1, 5));
    QuasiMode q = testutil::random_quasimode(rng, p.num_rules());
    ModeSpec mode = ModeSpec::from_quasimode(q);
    Stepper stepper(p, mode);

    SymbolSet start = testutil::random_subset(rng, n);
    SymbolSet target = testutil::random_subset(rng, n);

    // plain layered distances from the definition
    std::vector<SymbolSet> layer{start};
    std::set<std::string> seen{start.to_bitstring()};
    std::optional<std::size_t> distance;
    if (start == target) distance = 0;
    for (std::size_t d = 1; d <= (std::size_t{1} << n) && !distance; ++d) {
      std::vector<SymbolSet> next;
      for (const auto& s : layer)
        for (const auto& st : stepper.successors(s)) {
          if (seen.count(st.successor.to_bitstring())) continue;
          seen.insert(st.successor.to_bitstring());
          if (st.successor == target) distance = d;
          next.push_back(st.successor);
        }
      layer = std::move(next);
    }

    ReachProblem problem{p, mode, {start}, TargetSpec::states({target})};
    auto result = solve_reach(problem);
    REQUIRE(result.reachable == distance.has_value());
    if (distance) CHECK(result.witnesses[0].steps.size() == *distance);
  }
}

TEST_CASE("formula targets select satisfying states") {
  Bps p = testutil::two_rule_bps();
  Formula target = parse_formula("!a & !b", p.alphabet());
  ReachProblem problem{p, ModeSpec::max_parallel(), {bits("11")},
                       TargetSpec::formula(target)};
  auto result = solve_reach(problem);
  CHECK(result.reachable);
  CHECK(result.witnesses[0].final_state() == bits("00"));
  replay_witness(problem, result.witnesses[0]);
}

TEST_CASE("alphabet limit guards the explicit search") {
  testutil::Rng rng(testutil::test_seed() + 3);
  Bps p = testutil::random_bps(rng, 8, 2);
  ReachProblem problem{p, ModeSpec::max_parallel(), {SymbolSet(8)},
                       TargetSpec::states({SymbolSet(8)})};
  ReachOptions tight;
  tight.max_symbols = 4;
  CHECK_THROWS_WITH_AS(solve_reach(problem, tight), doctest::Contains("raise the limit"),
                       ModelError);
  ReachOptions enough;
  enough.max_symbols = 8;
  CHECK(solve_reach(problem, enough).reachable);
}

TEST_CASE("failed start short-circuits when asked") {
  Alphabet v({"a"});
  Bps p(v, {});
  ReachProblem problem{p,
                       ModeSpec::from_quasimode(QuasiMode::none(0)),
                       {bits("1"), bits("0")},
                       TargetSpec::states({bits("0")})};
  ReachOptions options;
  options.stop_on_first_failure = true;
  auto result = solve_reach(problem, options);
  CHECK_FALSE(result.reachable);
  CHECK(result.witnesses[0].status == WitnessStatus::Unreachable);
  CHECK(result.witnesses[1].status == WitnessStatus::Skipped);

  auto full = solve_reach(problem);
  CHECK(full.witnesses[1].status == WitnessStatus::Reached);
}

TEST_CASE("translated oscillator graphs match the drawn dynamics") {
  BoolNetwork f = testutil::oscillator_network();
  Bps p = bn_to_bps(f);
  auto roots = testutil::all_states(2);

  SUBCASE("synchronous") {
    ModeSpec mode = ModeSpec::from_quasimode(
        boolean_mode_to_quasimode(BooleanMode::synchronous(), p));
    StateGraph g = export_state_graph(p, mode, roots);
    CHECK(g.nodes.size() == 4);
    CHECK(edge_pairs(g) == std::set<std::pair<std::string, std::string>>{
                               {"00", "00"}, {"01", "10"}, {"10", "01"}, {"11", "00"}});
  }

  SUBCASE("asynchronous") {
    ModeSpec mode = ModeSpec::from_quasimode(
        boolean_mode_to_quasimode(BooleanMode::asynchronous(), p));
    StateGraph g = export_state_graph(p, mode, roots);
    CHECK(g.nodes.size() == 4);
    CHECK(edge_pairs(g) == std::set<std::pair<std::string, std::string>>{
                               {"00", "00"},
                               {"01", "00"},
                               {"01", "11"},
                               {"10", "00"},
                               {"10", "11"},
                               {"11", "01"},
                               {"11", "10"}});
  }
}

TEST_CASE("translated three-variable graph equals the synchronous map") {
  BoolNetwork f = testutil::three_var_network();
  Bps p = bn_to_bps(f);
  ModeSpec mode = ModeSpec::from_quasimode(
      boolean_mode_to_quasimode(BooleanMode::synchronous(), p));
  StateGraph g = export_state_graph(p, mode, testutil::all_states(3));
  std::set<std::pair<std::string, std::string>> expected;
  for (const auto& [from, to] : testutil::three_var_sync_map()) expected.insert({from, to});
  CHECK(g.nodes.size() == 8);
  CHECK(edge_pairs(g) == expected);
}

TEST_CASE("unreachable states stay out of the graph") {
  Bps p = testutil::two_rule_bps();
  StateGraph g = export_state_graph(p, ModeSpec::max_parallel(), {bits("11")});
  std::set<std::string> nodes;
  for (const auto& n : g.nodes) nodes.insert(n.to_bitstring());
  CHECK(nodes == std::set<std::string>{"11", "10", "00"});
}

TEST_CASE("dot output is deterministic and well formed") {
  Bps p = testutil::two_rule_bps();
  StateGraph g = export_state_graph(p, ModeSpec::max_parallel(), {bits("11")});
  std::string dot1 = to_dot(g, p);
  std::string dot2 = to_dot(export_state_graph(p, ModeSpec::max_parallel(), {bits("11")}), p);
  CHECK(dot1 == dot2);
  CHECK(dot1.find("digraph") != std::string::npos);
  CHECK(dot1.find("\"11\" -> \"10\" [label=\"r1\"]") != std::string::npos);
}

TEST_CASE("witness replay rejects corrupted witnesses") {
  Bps p = testutil::two_rule_bps();
  ReachProblem problem{p, ModeSpec::max_parallel(), {bits("11")},
                       TargetSpec::states({bits("00")})};
  auto result = solve_reach(problem);
  ReachWitness w = result.witnesses[0];

  ReachWitness wrong_state = w;
  wrong_state.steps[0].state = bits("01");
  CHECK_THROWS_AS(replay_witness(problem, wrong_state), ModelError);

  ReachWitness wrong_rules = w;
  wrong_rules.steps[0].fired = p.rule_set_of({"r2"});
  CHECK_THROWS_AS(replay_witness(problem, wrong_rules), ModelError);

  ReachWitness truncated = w;
  truncated.steps.pop_back();
  CHECK_THROWS_AS(replay_witness(problem, truncated), ModelError);
}

TEST_CASE("exploration stays within the state-space bound") {
  testutil::Rng rng(testutil::test_seed() + 4);
  for (int round = 0; round < 20; ++round) {
    std::size_t n = testutil::pick(rng, 1, 4);
    Bps p = testutil::random_bps(rng, n, testutil::pick(rng, 1, 5));
    ReachProblem problem{p,
                         ModeSpec::from_quasimode(testutil::random_quasimode(rng, p.num_rules())),
                         {testutil::random_subset(rng, n)},
                         TargetSpec::states({})};
    auto result = solve_reach(problem);
    CHECK_FALSE(result.reachable);  // no targets at all
    CHECK(result.stats.states_explored <= (std::size_t{1} << n));
  }
}
