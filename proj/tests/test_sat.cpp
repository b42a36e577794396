#include "wfltl/cnf.hpp"
#include "wfltl/error.hpp"
#include "wfltl/sat.hpp"

#include <doctest.h>

#include <random>

using namespace wfltl::sat;

namespace {

CnfInstance random_3cnf(std::mt19937_64 &rng, int vars, int clauses) {
  CnfInstance cnf;
  cnf.num_vars = vars;
  std::uniform_int_distribution<int> var(1, vars);
  for (int c = 0; c < clauses; ++c) {
    Clause cl;
    while (cl.size() < 3) {
      const int v = var(rng);
      if (std::find(cl.begin(), cl.end(), v) != cl.end() || std::find(cl.begin(), cl.end(), -v) != cl.end())
        continue;
      cl.push_back(rng() & 1 ? v : -v);
    }
    cnf.add(cl);
  }
  return cnf;
}

bool satisfies(const CnfInstance &cnf, const std::vector<bool> &model) {
  for (const auto &c : cnf.clauses) {
    bool ok = false;
    for (Lit l : c)
      ok = ok || model[static_cast<std::size_t>(std::abs(l))] == (l > 0);
    if (!ok)
      return false;
  }
  return true;
}

// Exhaustive check with clauses as bit masks over the assignment.
bool brute_force_sat(const CnfInstance &cnf) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> masks;
  for (const auto &c : cnf.clauses) {
    std::uint32_t pos = 0, neg = 0;
    for (Lit l : c)
      (l > 0 ? pos : neg) |= 1u << (std::abs(l) - 1);
    masks.emplace_back(pos, neg);
  }
  const std::uint32_t limit = 1u << cnf.num_vars;
  for (std::uint32_t a = 0; a < limit; ++a) {
    bool ok = true;
    for (const auto &[pos, neg] : masks)
      if (!((a & pos) | (~a & neg))) {
        ok = false;
        break;
      }
    if (ok)
      return true;
  }
  return false;
}

} // namespace

TEST_CASE("trivial instances") {
  CnfInstance unit;
  unit.num_vars = 1;
  unit.add({1});
  auto m = solve(unit);
  REQUIRE(m);
  CHECK((*m)[1]);

  CnfInstance contra = unit;
  contra.add({-1});
  CHECK_FALSE(solve(contra));

  CnfInstance empty_clause;
  empty_clause.num_vars = 1;
  empty_clause.add({});
  CHECK_FALSE(solve(empty_clause));

  CnfInstance none;
  none.num_vars = 3;
  CHECK(solve(none));
}

TEST_CASE("random 3-CNF at ratio 4 against exhaustive enumeration") {
  std::mt19937_64 rng(42);
  int sat_count = 0;
  for (int n = 0; n < 100; ++n) {
    const CnfInstance cnf = random_3cnf(rng, 20, 80);
    const bool expected = brute_force_sat(cnf);
    const auto model = solve(cnf);
    CHECK(model.has_value() == expected);
    if (model) {
      CHECK(satisfies(cnf, *model));
      ++sat_count;
    }
  }
  // Both outcomes occur near the threshold.
  CHECK(sat_count > 0);
  CHECK(sat_count < 100);
}

TEST_CASE("harder random instances are solved soundly") {
  std::mt19937_64 rng(7);
  for (int n = 0; n < 20; ++n) {
    const CnfInstance cnf = random_3cnf(rng, 120, 500);
    const auto model = solve(cnf);
    if (model)
      CHECK(satisfies(cnf, *model));
  }
}

TEST_CASE("pigeonhole 6 into 5 is unsatisfiable") {
  CnfInstance cnf;
  const int pigeons = 6, holes = 5;
  auto x = [&](int p, int h) { return p * holes + h + 1; };
  cnf.num_vars = pigeons * holes;
  for (int p = 0; p < pigeons; ++p) {
    Clause c;
    for (int h = 0; h < holes; ++h)
      c.push_back(x(p, h));
    cnf.add(c);
  }
  for (int h = 0; h < holes; ++h)
    for (int p = 0; p < pigeons; ++p)
      for (int q = p + 1; q < pigeons; ++q)
        cnf.add({-x(p, h), -x(q, h)});
  CHECK_FALSE(solve(cnf));
}

TEST_CASE("determinism per seed") {
  std::mt19937_64 rng(1);
  const CnfInstance cnf = random_3cnf(rng, 60, 200);
  const auto a = solve(cnf, 0);
  const auto b = solve(cnf, 0);
  REQUIRE(a);
  CHECK(*a == *b);
  const auto c = solve(cnf, 12345);
  REQUIRE(c);
  CHECK(satisfies(cnf, *c));
}

TEST_CASE("incremental clauses") {
  Solver s;
  for (int i = 0; i < 3; ++i)
    s.new_var();
  s.add_clause({1, 2, 3});
  int models = 0;
  while (s.solve() == Result::Sat) {
    ++models;
    s.add_clause({s.model_value(1) ? -1 : 1, s.model_value(2) ? -2 : 2, s.model_value(3) ? -3 : 3});
  }
  CHECK(models == 7);
}

TEST_CASE("DIMACS format") {
  CnfInstance cnf;
  cnf.new_var();
  cnf.add({1});
  CHECK(to_dimacs(cnf) == "p cnf 1 1\n1 0\n");
  cnf.names[1] = "x";
  CHECK(to_dimacs(cnf) == "c 1 x\np cnf 1 1\n1 0\n");

  const CnfInstance back = parse_dimacs("c comment\np cnf 3 2\n1 -2\n 3 0 -1 0\n");
  CHECK(back.num_vars == 3);
  REQUIRE(back.clauses.size() == 2);
  CHECK(back.clauses[0] == Clause{1, -2, 3});
  CHECK(back.clauses[1] == Clause{-1});
  CHECK_THROWS_AS(parse_dimacs("1 2 0\n"), wfltl::ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n2 0\n"), wfltl::ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 1 2\n1 0\n"), wfltl::ParseError);
}

TEST_CASE("exports round trip") {
  std::mt19937_64 rng(9);
  for (int n = 0; n < 20; ++n) {
    CnfInstance cnf = random_3cnf(rng, 15, 60);
    cnf.names[1] = "p@0";
    const CnfInstance d = parse_dimacs(to_dimacs(cnf));
    CHECK(d.clauses == cnf.clauses);
    CHECK(d.names == cnf.names);
    const CnfInstance s = parse_smtlib(to_smtlib(cnf));
    CHECK(s.clauses == cnf.clauses);
    CHECK(s.num_vars == cnf.num_vars);
  }
  CnfInstance contra;
  contra.new_var();
  contra.add({1});
  contra.add({-1});
  const std::string smt = to_smtlib(contra);
  CHECK(smt.find("(declare-const v1 Bool)") != std::string::npos);
  CHECK(smt.find("(assert (or (not v1)))") != std::string::npos);
  CHECK(smt.find("(check-sat)") != std::string::npos);
  CHECK_FALSE(solve(parse_smtlib(smt)));
  CHECK_THROWS_AS(parse_smtlib("(assert (or v9))"), wfltl::ParseError);
}
