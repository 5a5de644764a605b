#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "ink/sat.hpp"
#include "support/fixtures.hpp"

using namespace ink;

TEST_CASE("consistency of simple sets") {
  const auto sig = make_signature({"a", "b", "c"});
  CHECK(sat::is_consistent({parse_formula("a"), parse_formula("b | c")}, sig));
  CHECK(!sat::is_consistent({parse_formula("a"), parse_formula("!a & !b")}, sig));
  CHECK(sat::is_consistent(std::vector<Formula>{}, sig));
  CHECK(!sat::is_consistent({Formula::contradiction()}, sig));
}

TEST_CASE("models returned by check satisfy every input formula") {
  Rng rng(5);
  for (int round = 0; round < 120; ++round) {
    const KnowledgeBase kb = testing::random_kb(rng, 6, 6);
    const bool expected = testing::tt_consistent(kb);
    const sat::SatResult res = sat::check(kb.formulas(), kb.signature_ptr());
    CHECK(res.satisfiable == expected);
    if (res.satisfiable) {
      for (const Formula& f : kb.formulas()) CHECK(eval2(*res.model, f));
    }
  }
}

TEST_CASE("enumerate_models") {
  const auto sig1 = make_signature({"a"});
  const auto only = sat::enumerate_models(parse_formula("a"), sig1, 100);
  REQUIRE(only.size() == 1);
  CHECK(only[0].value(std::size_t{0}));

  const auto sig2 = make_signature({"a", "b"});
  CHECK(sat::enumerate_models(parse_formula("a | b"), sig2, 100).size() == 3);
  CHECK(sat::enumerate_models(Formula::contradiction(), sig2, 100).empty());

  // enumeration order and cap
  const auto some = sat::enumerate_models(parse_formula("a | b"), sig2, 2);
  REQUIRE(some.size() == 2);
  CHECK(some[0].index() < some[1].index());

  const auto big = make_signature(std::vector<std::string>(
      {"a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l", "m", "n", "o", "p", "q", "r", "s", "t", "u"}));
  CHECK_THROWS_AS(sat::enumerate_models(parse_formula("a"), big, 1), SignatureTooLargeError);
}

TEST_CASE("is_consistent agrees with model enumeration on random knowledge bases") {
  Rng rng(17);
  for (int round = 0; round < 80; ++round) {
    const KnowledgeBase kb = testing::random_kb(rng, 5, 5);
    std::optional<Formula> conj;
    for (const Formula& f : kb.formulas()) {
      conj = conj ? Formula::conj(std::move(*conj), f) : f;
    }
    const bool any_model = !sat::enumerate_models(*conj, kb.signature_ptr(), 1).empty();
    CHECK(sat::is_consistent(kb) == any_model);
  }
}

TEST_CASE("random_model returns a model and is seed-deterministic") {
  const auto sig = make_signature({"a", "b", "c"});
  const Formula f = parse_formula("a & (b | !c)");
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng r1(seed), r2(seed);
    const Interpretation w1 = sat::random_model(f, sig, r1);
    const Interpretation w2 = sat::random_model(f, sig, r2);
    CHECK(eval2(w1, f));
    CHECK(w1 == w2);
  }
}

TEST_CASE("random_model covers every model across seeds") {
  const auto sig = make_signature({"a", "b"});
  const Formula f = parse_formula("a | b");
  std::set<std::uint64_t> seen;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(seed);
    seen.insert(sat::random_model(f, sig, rng).index());
  }
  std::set<std::uint64_t> expected;
  for (const auto& w : sat::enumerate_models(f, sig, 100)) expected.insert(w.index());
  CHECK(seen == expected);  // includes the a-only and b-only models
}

TEST_CASE("random_model on an unsatisfiable formula") {
  const auto sig = make_signature({"a"});
  Rng rng(1);
  CHECK_THROWS_AS(sat::random_model(parse_formula("a & !a"), sig, rng), UnsatFormulaError);
}

TEST_CASE("exhausted decision budget is an error, not an answer") {
  Rng rng(3);
  const KnowledgeBase kb = testing::random_kb(rng, 6, 6);
  sat::SatOptions opts;
  opts.budget_propagations = 1;
  bool threw = false;
  try {
    // a handful of random draws; at least one needs more than one propagation
    for (int i = 0; i < 20; ++i) {
      const KnowledgeBase k = testing::random_kb(rng, 6, 6);
      sat::is_consistent(k, opts);
    }
  } catch (const BudgetExceededError&) {
    threw = true;
  }
  CHECK(threw);
}

TEST_CASE("tseitin auxiliaries are projected out of models") {
  const auto sig = make_signature({"a", "b"});
  const sat::SatResult res = sat::check({parse_formula("!(a & b)")}, sig);
  REQUIRE(res.satisfiable);
  CHECK(res.model->signature().size() == 2);
}
