#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bps/error.hpp"
#include "bps/formula.hpp"
#include "testutil.hpp"

using namespace bps;
using testutil::bits;

TEST_CASE("precedence and left grouping") {
  Alphabet alphabet({"x", "y", "ux0", "ux1"});
  Formula f = parse_formula("(!x & y) & ux0 | !ux1", alphabet);

  Formula expected = Formula::disjunction(
      {Formula::conjunction(
           {Formula::conjunction({Formula::negation(Formula::variable(0)),
                                  Formula::variable(1)}),
            Formula::variable(2)}),
       Formula::negation(Formula::variable(3))});
  CHECK(f == expected);
  CHECK(f.to_string(alphabet) == "(!x & y) & ux0 | !ux1");
}

TEST_CASE("constants") {
  Alphabet alphabet({"x"});
  CHECK(parse_formula("1", alphabet) == Formula::constant(true));
  CHECK(parse_formula("0", alphabet) == Formula::constant(false));
  CHECK(parse_formula("1", alphabet).eval(SymbolSet(1)));
}

TEST_CASE("flat n-ary runs") {
  Alphabet alphabet({"a", "b", "c"});
  Formula f = parse_formula("a & b & c", alphabet);
  CHECK(f.kind() == FormulaKind::Conjunction);
  CHECK(f.operands().size() == 3);

  Formula nested = Formula::conjunction(
      {Formula::conjunction({Formula::variable(0), Formula::variable(1)}),
       Formula::variable(2)});
  CHECK(f != nested);
  CHECK(nested.to_string(alphabet) == "(a & b) & c");
  CHECK(parse_formula(nested.to_string(alphabet), alphabet) == nested);
}

TEST_CASE("parse errors carry positions") {
  Alphabet alphabet({"x"});
  CHECK_THROWS_WITH_AS(parse_formula("x & foo", alphabet),
                       doctest::Contains("unknown identifier 'foo'"), ParseError);
  CHECK_THROWS_AS(parse_formula("x &", alphabet), ParseError);
  CHECK_THROWS_AS(parse_formula("(x", alphabet), ParseError);
  CHECK_THROWS_AS(parse_formula("x y", alphabet), ParseError);
  try {
    parse_formula("x & $", alphabet);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.col == 5);
  }
}

TEST_CASE("evaluation") {
  Alphabet alphabet({"x", "y"});
  Formula fx = parse_formula("!x & y", alphabet);
  Formula fy = parse_formula("x & !y", alphabet);
  CHECK(fx.eval(bits("01")));
  CHECK_FALSE(fy.eval(bits("11")));
  CHECK(Formula::constant(true).eval(SymbolSet(2)));
}

TEST_CASE("arity invariant") {
  CHECK_THROWS_AS(Formula::conjunction({Formula::variable(0)}), ModelError);
  CHECK_THROWS_AS(Formula::disjunction({}), ModelError);
  CHECK(Formula::all_of({}) == Formula::constant(true));
  CHECK(Formula::any_of({}) == Formula::constant(false));
  CHECK(Formula::all_of({Formula::variable(1)}) == Formula::variable(1));
}

TEST_CASE("exact set formula") {
  SymbolSet mu = bits("10");
  SymbolSet universe = bits("11");
  Formula f = exact_set_formula(mu, universe);
  Alphabet alphabet({"u1", "u2"});
  CHECK(f.to_string(alphabet) == "u1 & !u2");
  CHECK(f.eval(bits("10")));
  CHECK_FALSE(f.eval(bits("11")));

  CHECK(exact_set_formula(bits("0"), bits("1")).to_string(Alphabet({"u"})) == "!u");
  CHECK_THROWS_AS(exact_set_formula(bits("11"), bits("01")), ModelError);
}

TEST_CASE("exact set formula against brute force") {
  testutil::Rng rng(testutil::test_seed());
  for (int round = 0; round < 50; ++round) {
    std::size_t n = testutil::pick(rng, 1, 4);
    SymbolSet universe = testutil::random_subset(rng, n);
    SymbolSet mu = testutil::random_subset(rng, n) & universe;
    Formula f = exact_set_formula(mu, universe);
    for (const auto& w : testutil::all_states(n))
      CHECK(f.eval(w) == ((w & universe) == mu));
  }
}

TEST_CASE("print/parse round trip on random formulas") {
  testutil::Rng rng(testutil::test_seed());
  Alphabet alphabet({"x", "y", "z", "w_1", "v2"});
  for (int round = 0; round < 500; ++round) {
    Formula f = testutil::random_formula(rng, alphabet.size(), 4);
    Formula reparsed = parse_formula(f.to_string(alphabet), alphabet);
    REQUIRE(reparsed == f);
  }
}

TEST_CASE("negation complements evaluation") {
  testutil::Rng rng(testutil::test_seed() + 1);
  for (int round = 0; round < 30; ++round) {
    std::size_t n = testutil::pick(rng, 1, 6);
    Formula f = testutil::random_formula(rng, n, 3);
    Formula nf = Formula::negation(f);
    for (const auto& w : testutil::all_states(n)) CHECK(nf.eval(w) == !f.eval(w));
  }
}

TEST_CASE("evaluation ignores symbols outside the free variables") {
  testutil::Rng rng(testutil::test_seed() + 2);
  for (int round = 0; round < 100; ++round) {
    std::size_t n = testutil::pick(rng, 2, 6);
    Formula f = testutil::random_formula(rng, n, 3);
    SymbolSet frees = f.free_vars(n);
    SymbolSet w = testutil::random_subset(rng, n);
    bool base = f.eval(w);
    for (std::size_t i = 0; i < n; ++i) {
      if (frees.test(i)) continue;
      SymbolSet flipped = w;
      flipped.assign(i, !w.test(i));
      CHECK(f.eval(flipped) == base);
    }
  }
}

TEST_CASE("substitution pins variables") {
  Alphabet alphabet({"x", "u"});
  Formula f = parse_formula("x & u | !u", alphabet);
  std::vector<std::optional<bool>> binding(2);
  binding[1] = true;
  Formula g = f.substitute(binding);
  CHECK(g == parse_formula("x & 1 | !1", alphabet));
  for (const auto& w : testutil::all_states(2))
    if (w.test(1)) CHECK(g.eval(w) == f.eval(w));
}
