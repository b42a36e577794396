#pragma once

#include "wfltl/formula.hpp"

namespace wfltl::ltl {

/// Negation normal form over {true, false, p, !p, &, |, X, Y, Z, U, R, S, T}.
///
/// F and G are expanded to `true U f` and `false R f`; negated Y becomes the
/// weak previous Z, which holds at position 0. Shared subterms stay shared
/// (memoized per node and polarity), so the result is a DAG of linear size.
Formula to_nnf(const Formula &f);

/// True if `f` only uses the operators produced by to_nnf.
bool is_nnf(const Formula &f);

} // namespace wfltl::ltl
