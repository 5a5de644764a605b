#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ink/parse.hpp"
#include "support/fixtures.hpp"

using namespace ink;

TEST_CASE("single atoms and precedence") {
  const Formula a = parse_formula("a");
  CHECK(a.kind() == Formula::Kind::Atom);
  CHECK(a.atom_name() == "a");

  // ! binds tighter than &, & tighter than |
  const Formula f = parse_formula("!(a & b) | c");
  REQUIRE(f.kind() == Formula::Kind::Or);
  REQUIRE(f.left().kind() == Formula::Kind::Not);
  CHECK(f.left().child().kind() == Formula::Kind::And);
  CHECK(f.right().atom_name() == "c");

  const Formula g = parse_formula("!a & b | c");
  REQUIRE(g.kind() == Formula::Kind::Or);
  CHECK(g.left().kind() == Formula::Kind::And);
  CHECK(g.left().left().kind() == Formula::Kind::Not);

  // left association
  const Formula h = parse_formula("a | b | c");
  REQUIRE(h.kind() == Formula::Kind::Or);
  CHECK(h.left().kind() == Formula::Kind::Or);
  CHECK(h.right().atom_name() == "c");
}

TEST_CASE("false keyword and nested negation") {
  CHECK(parse_formula("false").kind() == Formula::Kind::Contradiction);
  CHECK(parse_formula("!!a") == Formula::negate(Formula::negate(Formula::atom("a"))));
  CHECK(parse_formula("a & false").right().kind() == Formula::Kind::Contradiction);
}

TEST_CASE("syntax errors carry position") {
  CHECK_THROWS_AS(parse_formula("a &"), ParseError);
  CHECK_THROWS_AS(parse_formula("| a"), ParseError);
  CHECK_THROWS_AS(parse_formula("(a"), ParseError);
  CHECK_THROWS_AS(parse_formula("a b"), ParseError);
  CHECK_THROWS_AS(parse_formula("a @ b"), ParseError);
  try {
    parse_formula("a &");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() >= 3);
  }
}

TEST_CASE("strict signature mode rejects unknown atoms") {
  Signature sig({"a", "b"});
  CHECK(parse_formula("a & b", sig).kind() == Formula::Kind::And);
  CHECK_THROWS_AS(parse_formula("a & c", sig), ParseError);
}

TEST_CASE("parse-print-parse is the identity on the printed form") {
  Rng rng(2024);
  const auto atoms = testing::test_atoms(6);
  for (int round = 0; round < 300; ++round) {
    const Formula f = testing::random_formula(rng, atoms, 5);
    const Formula g = parse_formula(f.to_string());
    CHECK(f == g);
    CHECK(f.to_string() == g.to_string());
  }
}

TEST_CASE("kb text format: comments, blank lines, one formula per line") {
  const auto kb = parse_kb("# header\n\na | b\n !a   # trailing comment\n\n");
  CHECK(kb.size() == 2);
  CHECK(kb.formula(0).to_string() == "a | b");
  CHECK(kb.formula(1).to_string() == "!a");

  const std::string text = to_kb_text(kb);
  const auto again = parse_kb(text);
  CHECK(again.size() == kb.size());
  for (std::size_t i = 0; i < kb.size(); ++i) CHECK(again.formula(i) == kb.formula(i));
}

TEST_CASE("parse errors in kb files report the right line") {
  try {
    parse_kb("a\nb |\nc\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("dimacs import") {
  const char* text =
      "c example\n"
      "p cnf 3 3\n"
      "1 -2 0\n"
      "2 3 0\n"
      "-1 0\n";
  const auto kb = parse_dimacs(text);
  CHECK(kb.size() == 3);
  CHECK(kb.signature().atoms() == std::vector<std::string>{"x1", "x2", "x3"});
  CHECK(kb.formula(0).to_string() == "x1 | !x2");
  CHECK(kb.formula(2).to_string() == "!x1");

  // duplicate clauses collapse; declared-but-unused variables stay in the
  // signature
  const auto dup = parse_dimacs("p cnf 4 3\n1 2 0\n1 2 0\n-3 0\n");
  CHECK(dup.size() == 2);
  CHECK(dup.signature().size() == 4);

  CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n2 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("1 0\n"), ParseError);
}

TEST_CASE("dimacs export requires pure clauses") {
  const auto kb = parse_dimacs("p cnf 2 2\n1 2 0\n-1 0\n");
  const std::string out = to_dimacs(kb);
  CHECK(out.find("p cnf 2 2") == 0);
  const auto back = parse_dimacs(out);
  CHECK(back.size() == 2);
  CHECK(back.formula(0) == kb.formula(0));

  CHECK_THROWS_AS(to_dimacs(parse_kb("a & b\n")), InvalidArgumentError);
}
