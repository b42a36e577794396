#pragma once

#include "wfltl/cnf.hpp"
#include "wfltl/formula.hpp"
#include "wfltl/lasso.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wfltl::bsc {

enum class SolverKind { Embedded, ExportOnly };

struct CheckConfig {
  std::size_t k = 35; // positions 0..k
  SolverKind solver = SolverKind::Embedded;
  std::uint64_t seed = 0;
};

/// Propositional image of a formula over lassos with k + 1 positions.
///
/// Positions 0..k carry one variable per proposition. Loop selector l_j
/// (exactly one true, j in 0..k) makes position j the successor of k, so the
/// trace is positions 0..j-1 followed by the loop j..k. Subformulas with past
/// operators get extra copies of the loop (one per level of past nesting),
/// the last copy being periodic.
struct Encoding {
  sat::CnfInstance cnf;
  std::size_t k = 0;
  std::vector<std::string> alphabet;      // sorted atoms of the formula
  std::vector<std::vector<sat::Lit>> props; // [position][alphabet index]
  std::vector<sat::Lit> loop;               // l_0..l_k
};

/// Throws Error for k == 0 and for bounds whose variable count would not fit
/// the literal type.
Encoding encode(const ltl::Formula &f, std::size_t k);

/// Lasso denoted by a satisfying assignment (index 0 unused).
LassoTrace decode(const Encoding &enc, const std::vector<bool> &model);

struct Verdict {
  enum class Kind { Sat, UnsatUpTo, Exported };
  Kind kind = Kind::UnsatUpTo;
  std::size_t k = 0;
  std::optional<LassoTrace> witness; // Sat only
  std::string exported;              // Exported only: DIMACS text
};

/// Bounded satisfiability. Sat witnesses are re-checked with ltl::evaluate
/// before being returned; a failing witness raises Error. UnsatUpTo(k) only
/// rules out lasso models with at most k + 1 positions.
Verdict check(const ltl::Formula &f, const CheckConfig &cfg);

/// Up to `limit` pairwise distinct witnesses, each gated like check().
std::vector<LassoTrace> enumerate_witnesses(const ltl::Formula &f, const CheckConfig &cfg,
                                            std::size_t limit);

struct GateStats {
  std::uint64_t checks = 0;
  std::uint64_t trips = 0;
};
/// Process-wide counters of the witness self-check.
GateStats gate_stats();

std::string export_dimacs(const sat::CnfInstance &cnf);
std::string export_smtlib(const ltl::Formula &f, std::size_t k);

/// {"prefix": [[...], ...], "loop": [[...], ...]} with sorted propositions.
std::string witness_to_json(const LassoTrace &trace);
/// Throws ParseError on malformed input.
LassoTrace witness_from_json(const std::string &text);

} // namespace wfltl::bsc
