#pragma once

#include "wfltl/compiler.hpp"
#include "wfltl/formula.hpp"
#include "wfltl/lasso.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace wfltl::oracle {

inline constexpr std::size_t kMaxAlphabet = 8;
inline constexpr std::size_t kMaxTotal = 8;

struct EnumerationSpec {
  std::set<std::string> alphabet;
  std::size_t max_total = 1; // bound on |prefix| + |loop|
};

/// First lasso satisfying `f` at position 0, in canonical order: shorter
/// prefixes first, then shorter loops, then letters counted in binary where
/// bit (position * |alphabet| + index) holds alphabet[index] (sorted) at
/// that position. Throws Error when the limits are exceeded or atoms(f) is
/// not covered by the alphabet.
std::optional<LassoTrace> enumerate_sat(const ltl::Formula &f, const EnumerationSpec &spec);

struct ExplainRow {
  std::size_t position = 0;
  bool in_loop = false;
  std::vector<std::string> places;
  std::vector<std::string> transitions;
  std::vector<std::string> exceptions;
};

struct ExplainReport {
  std::vector<ExplainRow> rows;
  std::size_t loop_start = 0;
  /// Activities (and start) holding at every loop position.
  std::vector<std::string> divergent;
  /// Some end place holds throughout the loop.
  bool terminated = false;
};

/// Timeline of a witness of model_formula(cu). Throws Error if the trace is
/// malformed or does not satisfy the model.
ExplainReport explain(const LassoTrace &witness, const CompilationUnit &cu);

/// Plain text table, one row per position.
std::string render_text(const ExplainReport &report);

/// Witness JSON plus a "divergent" list.
std::string render_json(const LassoTrace &witness, const ExplainReport &report);

} // namespace wfltl::oracle
