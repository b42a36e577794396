#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace wfltl::sat {

/// DIMACS-style literal: +v or -v for variable v >= 1.
using Lit = std::int32_t;

using Clause = std::vector<Lit>;

/// Propositional instance plus a name for every variable that carries meaning
/// outside the solver (propositions, subformulas, loop selectors).
struct CnfInstance {
  std::int32_t num_vars = 0;
  std::vector<Clause> clauses;
  std::map<std::int32_t, std::string> names;

  std::int32_t new_var() { return ++num_vars; }
  void add(Clause c) { clauses.push_back(std::move(c)); }
};

/// `c` lines for named variables, `p cnf V C`, one clause per line ending in 0.
std::string to_dimacs(const CnfInstance &cnf);

/// Accepts comments, the problem line and clauses spanning lines.
/// Throws ParseError.
CnfInstance parse_dimacs(std::string_view text);

/// QF Boolean SMT-LIB 2: one declare-const per variable, one assert per
/// clause, then (check-sat) (get-model).
std::string to_smtlib(const CnfInstance &cnf);

/// Reads back the subset produced by to_smtlib. Throws ParseError.
CnfInstance parse_smtlib(std::string_view text);

} // namespace wfltl::sat
