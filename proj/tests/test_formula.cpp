#include "support.hpp"

#include "wfltl/error.hpp"
#include "wfltl/formula.hpp"

#include <doctest.h>

using namespace wfltl::ltl;

TEST_CASE("property formula parses to the expected tree") {
  const Formula f = parse_formula("G(!tf & !hf & !sf) -> F(end)");
  const Formula expected = implies(
      globally(conj(conj(negate(prop("tf")), negate(prop("hf"))), negate(prop("sf")))),
      eventually(prop("end")));
  CHECK(f == expected);
  CHECK(atoms(f) == std::set<std::string>{"end", "hf", "sf", "tf"});
}

TEST_CASE("precedence and associativity") {
  CHECK(parse_formula("p & q | r") == disj(conj(prop("p"), prop("q")), prop("r")));
  CHECK(parse_formula("p | q -> r") == implies(disj(prop("p"), prop("q")), prop("r")));
  CHECK(parse_formula("p -> q <-> r") == iff(implies(prop("p"), prop("q")), prop("r")));
  CHECK(parse_formula("p U q & r") == conj(until(prop("p"), prop("q")), prop("r")));
  CHECK(parse_formula("!p U q") == until(negate(prop("p")), prop("q")));
  CHECK(parse_formula("p U q S r") == until(prop("p"), since(prop("q"), prop("r"))));
  CHECK(parse_formula("p -> q -> r") == implies(prop("p"), implies(prop("q"), prop("r"))));
  CHECK(parse_formula("a & b & c") == conj(conj(prop("a"), prop("b")), prop("c")));
}

TEST_CASE("syntax errors carry a position") {
  CHECK_THROWS_AS(parse_formula("p U"), wfltl::ParseError);
  CHECK_THROWS_AS(parse_formula("(p & q"), wfltl::ParseError);
  CHECK_THROWS_AS(parse_formula("p q"), wfltl::ParseError);
  CHECK_THROWS_AS(parse_formula(""), wfltl::ParseError);
  try {
    parse_formula("p &\n  & q");
    FAIL("expected a parse error");
  } catch (const wfltl::ParseError &e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
}

TEST_CASE("comments are skipped") {
  CHECK(parse_formula("# header\np # trailing\n") == prop("p"));
}

TEST_CASE("golden canonical texts") {
  std::istringstream in(testing::slurp(testing::source_path("tests/golden/formulas.txt")));
  std::string line;
  int cases = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#')
      continue;
    const auto sep = line.find("==>");
    REQUIRE(sep != std::string::npos);
    std::string input = line.substr(0, sep);
    std::string expected = line.substr(sep + 3);
    auto trim = [](std::string &s) {
      s.erase(0, s.find_first_not_of(' '));
      s.erase(s.find_last_not_of(' ') + 1);
    };
    trim(input);
    trim(expected);
    CAPTURE(input);
    CHECK(pretty(parse_formula(input)) == expected);
    CHECK(parse_formula(expected) == parse_formula(input));
    ++cases;
  }
  CHECK(cases == 20);
}

TEST_CASE("parse inverts pretty on random formulas") {
  testing::FormulaGen gen({"p", "q", "r"}, 7);
  for (int n = 0; n < 2000; ++n) {
    const Formula f = gen(5);
    CAPTURE(pretty(f));
    CHECK(parse_formula(pretty(f)) == f);
  }
}

TEST_CASE("metrics") {
  const Formula f = parse_formula("p S (Y q) U X r");
  CHECK(depth(prop("p")) == 0);
  CHECK(depth(f) == 3);
  CHECK(size(f) == 7);
  CHECK(past_depth(f) == 2);
  CHECK(past_depth(parse_formula("G(p -> F q)")) == 0);
}

TEST_CASE("keywords") {
  for (const char *kw : {"X", "Y", "U", "S", "R", "T", "F", "G", "true", "false"})
    CHECK(is_keyword(kw));
  CHECK_FALSE(is_keyword("Bill"));
}
