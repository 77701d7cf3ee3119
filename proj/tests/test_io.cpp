#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "bps/error.hpp"
#include "bps/io.hpp"
#include "testutil.hpp"

using namespace bps;
using testutil::bits;

namespace {

io::BpsFile reparse(const Bps& system, const std::optional<ModeSpec>& mode) {
  std::istringstream in(io::write_bps(system, mode));
  return io::parse_bps(in);
}

}  // namespace

TEST_CASE("system files parse") {
  std::istringstream in(
      "# a two-rule system\n"
      "alphabet: a b\n"
      "rule r1: {a,b} -> {a} | 1\n"
      "rule r2: {a} -> {} | !b\n"
      "quasimode: maxparallel\n");
  io::BpsFile f = io::parse_bps(in);
  CHECK(f.system.alphabet().names() == std::vector<std::string>{"a", "b"});
  CHECK(f.system.num_rules() == 2);
  CHECK(f.system.rule(0).lhs == bits("11"));
  CHECK(f.system.rule(1).guard == parse_formula("!b", f.system.alphabet()));
  REQUIRE(f.mode.has_value());
  CHECK(f.mode->is_max_parallel());
}

TEST_CASE("quasimode expressions parse") {
  std::string base =
      "alphabet: a b\n"
      "rule r1: {} -> {a} | 1\n"
      "rule r2: {} -> {b} | 1\n"
      "rule r3: {a} -> {} | 1\n"
      "rule r4: {b} -> {} | 1\n";

  SUBCASE("explicit family") {
    std::istringstream in(base + "quasimode: { {r1,r2} {r2} {} }\n");
    io::BpsFile f = io::parse_bps(in);
    CHECK(f.mode->quasimode().enumerate().size() == 3);
  }

  SUBCASE("powerset crossed with singleton") {
    std::istringstream in(base + "quasimode: powerset(r3,r4) x singleton(r1,r2)\n");
    io::BpsFile f = io::parse_bps(in);
    auto elements = f.mode->quasimode().enumerate();
    CHECK(elements.size() == 4);
    RuleSet base_rules = f.system.rule_set_of({"r1", "r2"});
    for (const auto& m : elements) CHECK(base_rules.subset_of(m));
  }

  SUBCASE("unknown rule is an error with the line number") {
    std::istringstream in(base + "quasimode: singleton(zzz)\n");
    CHECK_THROWS_WITH_AS(io::parse_bps(in), doctest::Contains("zzz"), ParseError);
  }
}

TEST_CASE("system files round trip") {
  testutil::Rng rng(testutil::test_seed());
  for (int round = 0; round < 40; ++round) {
    Bps p = testutil::random_bps(rng, testutil::pick(rng, 1, 5), testutil::pick(rng, 0, 5));
    std::optional<ModeSpec> mode;
    switch (testutil::pick(rng, 0, 2)) {
      case 0: mode = ModeSpec::max_parallel(); break;
      case 1: mode = ModeSpec::from_quasimode(testutil::random_quasimode(rng, p.num_rules())); break;
      default: break;
    }
    std::string text = io::write_bps(p, mode);
    io::BpsFile back = reparse(p, mode);

    // alphabet and rules are reproduced exactly
    REQUIRE(back.system.alphabet() == p.alphabet());
    REQUIRE(back.system.num_rules() == p.num_rules());
    for (std::size_t i = 0; i < p.num_rules(); ++i) {
      CHECK(back.system.rule(i).id == p.rule(i).id);
      CHECK(back.system.rule(i).lhs == p.rule(i).lhs);
      CHECK(back.system.rule(i).rhs == p.rule(i).rhs);
      CHECK(back.system.rule(i).guard == p.rule(i).guard);
    }
    // the mode denotes the same family
    if (mode && !mode->is_max_parallel())
      CHECK(back.mode->quasimode().enumerate() == mode->quasimode().enumerate());
    // and the writer is a fixed point
    CHECK(io::write_bps(back.system, back.mode) == text);
  }
}

TEST_CASE("network files") {
  std::istringstream in(
      "vars: x y\n"
      "fn x: !x & y\n"
      "fn y: x & !y\n");
  BoolNetwork f = io::parse_bn(in);
  CHECK(f.vars.names() == std::vector<std::string>{"x", "y"});
  CHECK(f.update[0] == parse_formula("!x & y", f.vars));

  std::istringstream missing("vars: x y\nfn x: !x\n");
  CHECK_THROWS_WITH_AS(io::parse_bn(missing), doctest::Contains("missing update"),
                       ParseError);

  std::istringstream dup("vars: x\nfn x: x\nfn x: !x\n");
  CHECK_THROWS_AS(io::parse_bn(dup), ParseError);

  std::istringstream unknown("vars: x\nfn x: x & q\n");
  CHECK_THROWS_WITH_AS(io::parse_bn(unknown), doctest::Contains("'q'"), ParseError);

  // writer round trip
  std::istringstream again(io::write_bn(f));
  BoolNetwork g = io::parse_bn(again);
  CHECK(g.update[0] == f.update[0]);
  CHECK(g.update[1] == f.update[1]);
}

TEST_CASE("controlled network files with explicit controls") {
  std::istringstream in(
      "vars: x y\n"
      "controls: ux0 ux1 uy0 uy1\n"
      "fn x: (!x & y) & ux0 | !ux1\n"
      "fn y: (x & !y) & uy0 | !uy1\n");
  Bcn b = io::parse_bcn(in);
  CHECK(b.num_vars() == 2);
  CHECK(b.num_controls() == 4);
  CHECK(b.freeze_structured());  // names pair up as ux0/ux1, uy0/uy1
  CHECK(b.update()[0] == testutil::oscillator_bcn().update()[0]);
}

TEST_CASE("controlled network files with a freeze line") {
  std::istringstream in(
      "vars: x1 x2 x3\n"
      "fn x1: !x1 & x2 & x3 | x1 & !x2 & x3 | x1 & x2 & !x3\n"
      "fn x2: !x2 & x3 | x1 & x2 & !x3\n"
      "fn x3: x1 & x2 | x3\n"
      "freeze: x1 x2 polarity=active\n");
  Bcn b = io::parse_bcn(in);
  Bcn expected = testutil::three_var_bcn();
  CHECK(b.alphabet() == expected.alphabet());
  CHECK(b.polarity() == FreezePolarity::ActiveHigh);
  for (std::size_t i = 0; i < 3; ++i) CHECK(b.update()[i] == expected.update()[i]);

  std::istringstream both(
      "vars: x\ncontrols: u\nfn x: x & u\nfreeze: x\n");
  CHECK_THROWS_AS(io::parse_bcn(both), ParseError);
}

TEST_CASE("control mode files") {
  Bcn b = testutil::three_var_bcn();

  std::istringstream named("mode: tcs\n");
  CHECK(io::parse_control_mode(named, b).kind() == ControlMode::Kind::Tcs);

  std::istringstream pairs(
      "pairs:\n"
      "{u1_1,u2_1} -> {u1_1,u2_1}\n"
      "{u1_1,u2_1} -> {}\n");
  ControlMode cm = io::parse_control_mode(pairs, b);
  REQUIRE(cm.kind() == ControlMode::Kind::Explicit);
  CHECK(cm.pairs().size() == 2);

  std::istringstream bad("pairs:\n{x1} -> {}\n");
  CHECK_THROWS_AS(io::parse_control_mode(bad, b), ParseError);

  std::istringstream junk("mode: sometimes\n");
  CHECK_THROWS_AS(io::parse_control_mode(junk, b), ParseError);
}

TEST_CASE("automaton files") {
  std::istringstream in(
      "states: q0 qL q1\n"
      "tape: Zl B Zr a\n"
      "input: a\n"
      "output: a\n"
      "markers: Zl B Zr\n"
      "init: q0\n"
      "final: q1\n"
      "q0 a -> q0 B R\n"
      "q0 Zr -> qL Zr L\n"
      "q0 Zl -> q0 Zl R\n"
      "q0 B -> q0 B R\n"
      "qL B -> qL B L\n"
      "qL a -> qL a S\n"
      "qL Zl -> q1 Zl S\n"
      "qL Zr -> qL Zr L\n"
      "q1 Zl -> q1 Zl S\n"
      "q1 B -> q1 B S\n"
      "q1 Zr -> q1 Zr S\n"
      "q1 a -> q1 a S\n");
  Lba m = io::parse_lba(in);
  CHECK(lba_accepts(m, m.parse_word("aaa")));
  CHECK(lba_accepts(m, {}));

  std::istringstream partial(
      "states: q0\ntape: Zl B Zr\ninput:\noutput:\nmarkers: Zl B Zr\ninit: q0\nfinal: q0\n");
  CHECK_THROWS_WITH_AS(io::parse_lba(partial), doctest::Contains("not total"), ParseError);
}

TEST_CASE("reaction system files") {
  std::istringstream in(
      "species: a b c\n"
      "reaction r1: {a} / {b} -> {c}\n"
      "reaction r2: {c} -> {a,c}\n");
  ReactionSystem rs = io::parse_rs(in);
  CHECK(rs.reactions.size() == 2);
  CHECK(rs.reactions[0].inhibitors == rs.species.set_of({"b"}));
  CHECK(rs.reactions[1].inhibitors.empty());
  CHECK(rs.result(rs.species.set_of({"a"})) == rs.species.set_of({"c"}));

  std::istringstream overlap("species: a\nreaction r: {a} / {a} -> {a}\n");
  CHECK_THROWS_AS(io::parse_rs(overlap), ParseError);
}

TEST_CASE("state specs") {
  Alphabet a({"x", "y", "z"});
  CHECK(io::parse_state("010", a) == bits("010"));
  CHECK(io::parse_state("{x,z}", a) == bits("101"));
  CHECK(io::parse_state("{}", a) == bits("000"));
  CHECK_THROWS_AS(io::parse_state("01", a), ParseError);
  CHECK_THROWS_AS(io::parse_state("{w}", a), ParseError);
}

TEST_CASE("problem files round trip") {
  Alphabet a({"x", "y"});
  std::string text = io::write_problem(bits("10"), bits("01"), a);
  CHECK(text == "from: {x}\nto: {y}\n");
}

TEST_CASE("witness json carries the full evolution") {
  Bps p = testutil::two_rule_bps();
  ReachProblem problem{p, ModeSpec::max_parallel(), {bits("11")},
                       TargetSpec::states({bits("00")})};
  auto result = solve_reach(problem);
  std::string json = io::reach_result_json(result, p);
  CHECK(json.find("\"answer\": true") != std::string::npos);
  CHECK(json.find("\"start\": \"11\"") != std::string::npos);
  CHECK(json.find("\"r1\"") != std::string::npos);
  CHECK(json.find("\"reached\": \"00\"") != std::string::npos);

  Bcn b = testutil::oscillator_bcn();
  CofaseProblem cp{b, {bits("01")}, {bits("11")}};
  std::string cjson = io::control_result_json(solve_cofase(cp), b);
  CHECK(cjson.find("\"control\"") != std::string::npos);
  CHECK(cjson.find("\"reached\": \"11\"") != std::string::npos);
}

TEST_CASE("parse errors carry line numbers") {
  std::istringstream in(
      "alphabet: a\n"
      "rule r1: {a} -> {} | 1\n"
      "rule r2: {b} -> {} | 1\n");
  try {
    io::parse_bps(in);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
    CHECK(std::string(e.what()).find("'b'") != std::string::npos);
  }
}

TEST_CASE("controlled networks with explicit controls round trip") {
  Bcn b = testutil::oscillator_bcn();
  std::istringstream in(io::write_bcn(b));
  Bcn back = io::parse_bcn(in);
  CHECK(back.alphabet() == b.alphabet());
  CHECK(back.num_vars() == b.num_vars());
  for (std::size_t i = 0; i < b.num_vars(); ++i)
    CHECK(back.update()[i] == b.update()[i]);
  CHECK(back.freeze_structured());
}
