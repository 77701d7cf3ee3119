#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "bps/error.hpp"
#include "bps/system.hpp"
#include "testutil.hpp"

using namespace bps;
using testutil::bits;

namespace {

std::vector<RuleSet> sorted(std::vector<RuleSet> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("applicability checks lhs and guard") {
  Bps p = testutil::two_rule_bps();
  SymbolSet ab = bits("11");
  CHECK(is_applicable(p.rule(0), ab));
  CHECK_FALSE(is_applicable(p.rule(1), ab));  // guard wants b absent
  CHECK_FALSE(is_applicable(p.rule(0), bits("10")));
  CHECK(applicable_rules(p, ab) == p.rule_set_of({"r1"}));
  CHECK(applicable_rules(p, bits("00")).empty());
}

TEST_CASE("applicable rules match the definition on random systems") {
  testutil::Rng rng(testutil::test_seed());
  for (int round = 0; round < 100; ++round) {
    Bps p = testutil::random_bps(rng, testutil::pick(rng, 1, 5), testutil::pick(rng, 0, 6));
    SymbolSet w = testutil::random_subset(rng, p.alphabet().size());
    RuleSet app = applicable_rules(p, w);
    for (std::size_t i = 0; i < p.num_rules(); ++i)
      CHECK(app.test(i) == testutil::oracle_applicable(p.rule(i), w));
  }
}

TEST_CASE("rule set application") {
  Bps p = testutil::two_rule_bps();

  SUBCASE("worked two-step run") {
    SymbolSet s1 = apply_rule_set(p, bits("11"), p.rule_set_of({"r1"}));
    CHECK(s1 == bits("10"));
    SymbolSet s2 = apply_rule_set(p, s1, p.rule_set_of({"r2"}));
    CHECK(s2 == bits("00"));
  }

  SUBCASE("empty set is the identity") {
    CHECK(apply_rule_set(p, bits("10"), p.no_rules()) == bits("10"));
  }

  SUBCASE("inapplicable member is an error naming the rule") {
    CHECK_THROWS_WITH_AS(apply_rule_set(p, bits("11"), p.rule_set_of({"r2"})),
                         doctest::Contains("r2"), ModelError);
  }

  SUBCASE("additions dominate removals") {
    Alphabet v({"x"});
    Bps q(v, {{"del", v.set_of({"x"}), v.empty_set(), Formula::constant(true)},
              {"add", v.empty_set(), v.set_of({"x"}), Formula::constant(true)}});
    CHECK(apply_rule_set(q, bits("1"), q.all_rules()) == bits("1"));
  }

  SUBCASE("duplicate mention is a single application") {
    RuleSet r1 = p.rule_set_of({"r1"});
    RuleSet r1_again = r1 | p.rule_set_of({"r1"});
    CHECK(apply_rule_set(p, bits("11"), r1) == apply_rule_set(p, bits("11"), r1_again));
  }
}

TEST_CASE("derive_mode keeps exactly the fully applicable advised sets") {
  Bps p = testutil::two_rule_bps();
  SymbolSet ab = bits("11");

  CHECK(derive_mode(QuasiMode::none(2), p, ab).empty());

  QuasiMode q = QuasiMode::explicit_family(
      2, {p.rule_set_of({"r1"}), p.rule_set_of({"r2"}), p.rule_set_of({"r1", "r2"})});
  CHECK(derive_mode(q, p, ab) == std::vector<RuleSet>{p.rule_set_of({"r1"})});

  // all-true guards and empty left-hand sides survive everywhere
  Alphabet v({"a", "b"});
  Bps free(v, {{"g1", v.empty_set(), v.set_of({"a"}), Formula::constant(true)},
               {"g2", v.empty_set(), v.set_of({"b"}), Formula::constant(true)}});
  QuasiMode all = QuasiMode::singleton(free.all_rules());
  for (const auto& w : testutil::all_states(2))
    CHECK(derive_mode(all, free, w) == std::vector<RuleSet>{free.all_rules()});

  // the empty advised set survives everywhere
  QuasiMode with_empty = QuasiMode::explicit_family(2, {p.no_rules()});
  CHECK(derive_mode(with_empty, p, bits("00")) == std::vector<RuleSet>{p.no_rules()});
}

TEST_CASE("maximal parallel stepping on the worked example") {
  Bps p = testutil::two_rule_bps();
  ModeSpec mode = ModeSpec::max_parallel();

  auto s1 = step(p, mode, bits("11"));
  REQUIRE(s1.size() == 1);
  CHECK(s1[0].fired == p.rule_set_of({"r1"}));
  CHECK(s1[0].successor == bits("10"));

  auto s2 = step(p, mode, s1[0].successor);
  REQUIRE(s2.size() == 1);
  CHECK(s2[0].successor == bits("00"));

  CHECK(step(p, mode, bits("00")).empty());  // halting
}

TEST_CASE("quasimode stepping fires the applicable part of each advised set") {
  Bps p = testutil::two_rule_bps();

  SUBCASE("empty quasimode halts") {
    CHECK(step(p, ModeSpec::from_quasimode(QuasiMode::none(2)), bits("11")).empty());
  }

  SUBCASE("advised set with nothing applicable stutters") {
    ModeSpec mode = ModeSpec::from_quasimode(QuasiMode::singleton(p.all_rules()));
    auto steps = step(p, mode, bits("00"));
    REQUIRE(steps.size() == 1);
    CHECK(steps[0].fired.empty());
    CHECK(steps[0].successor == bits("00"));
  }

  SUBCASE("partially applicable set fires its applicable portion") {
    ModeSpec mode = ModeSpec::from_quasimode(QuasiMode::singleton(p.all_rules()));
    auto steps = step(p, mode, bits("11"));
    REQUIRE(steps.size() == 1);
    CHECK(steps[0].fired == p.rule_set_of({"r1"}));
    CHECK(steps[0].successor == bits("10"));
  }
}

TEST_CASE("step successors equal brute force on random systems") {
  testutil::Rng rng(testutil::test_seed() + 10);
  for (int round = 0; round < 120; ++round) {
    Bps p = testutil::random_bps(rng, testutil::pick(rng, 1, 4), testutil::pick(rng, 0, 5));
    QuasiMode q = testutil::random_quasimode(rng, p.num_rules());
    ModeSpec mode = ModeSpec::from_quasimode(q);
    auto advised = q.enumerate();
    for (const auto& w : testutil::all_states(p.alphabet().size())) {
      std::vector<SymbolSet> got;
      for (const auto& s : step(p, mode, w)) got.push_back(s.successor);
      std::sort(got.begin(), got.end());
      got.erase(std::unique(got.begin(), got.end()), got.end());
      REQUIRE(got == testutil::oracle_successor_states(p, advised, w));
    }
  }
}

TEST_CASE("symbolic families enumerate to their explicit expansion") {
  Bps p = testutil::two_rule_bps();
  RuleSet r1 = p.rule_set_of({"r1"});
  RuleSet r2 = p.rule_set_of({"r2"});
  RuleSet both = p.all_rules();
  RuleSet none = p.no_rules();

  CHECK(QuasiMode::singleton(both).enumerate() == std::vector<RuleSet>{both});
  CHECK(QuasiMode::powerset_of(both).enumerate() ==
        sorted({none, r1, r2, both}));
  CHECK(QuasiMode::union_of({QuasiMode::singleton(r1), QuasiMode::singleton(r2)})
            .enumerate() == sorted({r1, r2}));
  CHECK(QuasiMode::dotted_product(QuasiMode::singleton(r1),
                                  QuasiMode::powerset_of(r2))
            .enumerate() == sorted({r1, both}));
  CHECK(QuasiMode::explicit_family(2, {r1, r1, none}).enumerate() == sorted({none, r1}));
}

TEST_CASE("dotted product identities") {
  testutil::Rng rng(testutil::test_seed() + 20);
  std::size_t n = 5;
  QuasiMode a = testutil::random_quasimode(rng, n);

  QuasiMode unit = QuasiMode::explicit_family(n, {RuleSet(n)});
  CHECK(QuasiMode::dotted_product(unit, a).enumerate() == a.enumerate());

  RuleSet s1 = RuleSet::of(n, {0});
  RuleSet s2 = RuleSet::of(n, {1});
  RuleSet s3 = RuleSet::of(n, {2});
  QuasiMode prod = QuasiMode::dotted_product(
      QuasiMode::explicit_family(n, {s1}), QuasiMode::explicit_family(n, {s2, s3}));
  CHECK(prod.enumerate() == sorted({s1 | s2, s1 | s3}));

  // every element of {base} x powerset(adds) is base plus a subset of adds
  RuleSet base = RuleSet::of(n, {0, 1});
  RuleSet adds = RuleSet::of(n, {2, 3, 4});
  for (const auto& m : QuasiMode::dotted_product(QuasiMode::singleton(base),
                                                 QuasiMode::powerset_of(adds))
                           .enumerate()) {
    CHECK(base.subset_of(m));
    CHECK((m - base).subset_of(adds));
  }
}

TEST_CASE("union of systems") {
  Bps p = testutil::two_rule_bps();

  SUBCASE("idempotent") {
    BpsUnion u = union_bps(p, p);
    CHECK(u.system.alphabet() == p.alphabet());
    CHECK(u.system.num_rules() == p.num_rules());
    CHECK(u.rule_map2 == u.rule_map1);
  }

  SUBCASE("disjoint alphabets add up") {
    testutil::Rng rng(testutil::test_seed() + 30);
    Bps q = testutil::random_bps(rng, 3, 2, "q");
    BpsUnion u = union_bps(p, q);
    CHECK(u.system.alphabet().size() == p.alphabet().size() + q.alphabet().size());
    CHECK(u.system.num_rules() == p.num_rules() + q.num_rules());
  }

  SUBCASE("conflicting ids are rejected") {
    Alphabet v({"a", "b"});
    Bps q(v, {{"r1", v.set_of({"a"}), v.set_of({"b"}), Formula::constant(true)}});
    CHECK_THROWS_WITH_AS(union_bps(p, q), doctest::Contains("r1"), ModelError);
  }

  SUBCASE("applicability in the union is the product of applicabilities") {
    testutil::Rng rng(testutil::test_seed() + 31);
    for (int round = 0; round < 60; ++round) {
      Bps p1 = testutil::random_bps(rng, testutil::pick(rng, 1, 3), testutil::pick(rng, 1, 3), "a");
      Bps p2 = testutil::random_bps(rng, testutil::pick(rng, 1, 2), testutil::pick(rng, 1, 3), "b");
      BpsUnion u = union_bps(p1, p2);
      REQUIRE(u.system.alphabet().size() <= 5);
      for (const auto& w : testutil::all_states(u.system.alphabet().size())) {
        RuleSet app = applicable_rules(u.system, w);
        // base applicable sets decompose over the two components
        for (std::size_t i = 0; i < p1.num_rules(); ++i) {
          SymbolSet w1(p1.alphabet().size());
          w.for_each([&](std::size_t s) {
            auto local = p1.alphabet().find(u.system.alphabet().name(s));
            if (local) w1.set(*local);
          });
          CHECK(app.test(u.rule_map1[i]) == is_applicable(p1.rule(i), w1));
        }
        for (std::size_t i = 0; i < p2.num_rules(); ++i) {
          SymbolSet w2(p2.alphabet().size());
          w.for_each([&](std::size_t s) {
            auto local = p2.alphabet().find(u.system.alphabet().name(s));
            if (local) w2.set(*local);
          });
          CHECK(app.test(u.rule_map2[i]) == is_applicable(p2.rule(i), w2));
        }
      }
    }
  }
}

TEST_CASE("product quasimode derives the product of derived modes") {
  testutil::Rng rng(testutil::test_seed() + 40);
  for (int round = 0; round < 80; ++round) {
    std::size_t nsym = testutil::pick(rng, 1, 5);
    Bps p1 = testutil::random_bps(rng, nsym, testutil::pick(rng, 1, 3), "a");
    Bps p2 = testutil::random_bps(rng, nsym, testutil::pick(rng, 1, 3), "b");
    BpsUnion u = union_bps(p1, p2);
    QuasiMode q1 = remap_rules(testutil::random_quasimode(rng, p1.num_rules()),
                               u.rule_map1, u.system.num_rules());
    QuasiMode q2 = remap_rules(testutil::random_quasimode(rng, p2.num_rules()),
                               u.rule_map2, u.system.num_rules());
    QuasiMode prod = QuasiMode::dotted_product(q1, q2);
    for (const auto& w : testutil::all_states(u.system.alphabet().size())) {
      auto lhs = derive_mode(prod, u.system, w);
      std::vector<RuleSet> rhs;
      for (const auto& m1 : derive_mode(q1, u.system, w))
        for (const auto& m2 : derive_mode(q2, u.system, w)) rhs.push_back(m1 | m2);
      std::sort(rhs.begin(), rhs.end());
      rhs.erase(std::unique(rhs.begin(), rhs.end()), rhs.end());
      REQUIRE(lhs == rhs);
    }
  }
}

TEST_CASE("larger advised families only add evolutions") {
  testutil::Rng rng(testutil::test_seed() + 50);
  for (int round = 0; round < 60; ++round) {
    Bps p = testutil::random_bps(rng, testutil::pick(rng, 1, 4), testutil::pick(rng, 1, 5));
    QuasiMode small = testutil::random_quasimode(rng, p.num_rules());
    auto extra = small.enumerate();
    extra.push_back(testutil::random_rule_subset(rng, p.num_rules()));
    QuasiMode big = QuasiMode::explicit_family(p.num_rules(), extra);
    for (const auto& w : testutil::all_states(p.alphabet().size())) {
      auto small_steps = step(p, ModeSpec::from_quasimode(small), w);
      auto big_steps = step(p, ModeSpec::from_quasimode(big), w);
      for (const auto& s : small_steps) {
        bool found = false;
        for (const auto& b : big_steps)
          if (b.fired == s.fired && b.successor == s.successor) found = true;
        CHECK(found);
      }
    }
  }
}

TEST_CASE("quasimode enumeration limit") {
  RuleSet big = RuleSet::full(30);
  CHECK_THROWS_AS(QuasiMode::powerset_of(big).enumerate(1 << 10), ModelError);
}
