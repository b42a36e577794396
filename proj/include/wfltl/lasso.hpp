#pragma once

#include "wfltl/formula.hpp"

#include <cstddef>
#include <set>
#include <string>
#include <vector>

namespace wfltl {

/// Propositions true at one position.
using PropSet = std::set<std::string>;

/// Ultimately periodic word prefix · loop^ω.
struct LassoTrace {
  std::vector<PropSet> prefix;
  std::vector<PropSet> loop; // nonempty for a well-formed trace

  std::size_t total() const noexcept { return prefix.size() + loop.size(); }
  /// Letter at absolute position i of the infinite word.
  const PropSet &at(std::size_t i) const;

  friend bool operator==(const LassoTrace &, const LassoTrace &) = default;
};

/// Throws Error when the loop is empty.
void require_well_formed(const LassoTrace &trace);

namespace ltl {

/// Truth of `f` at position `i` of the infinite word denoted by `trace`.
///
/// Every subformula is evaluated to an ultimately periodic boolean word
/// whose period is |loop|; past operators are run forward until their
/// one-bit state repeats at a loop-aligned position, so the result is exact
/// for arbitrary nesting of past and future operators.
bool evaluate(const Formula &f, const LassoTrace &trace, std::size_t i = 0);

/// Truth values of `f` at positions 0..count-1 (one evaluation pass).
std::vector<bool> evaluate_prefix(const Formula &f, const LassoTrace &trace, std::size_t count);

} // namespace ltl
} // namespace wfltl
