#pragma once

#include "wfltl/formula.hpp"
#include "wfltl/workflow.hpp"

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace wfltl {

/// Source rule of a generated axiom.
enum class Rule {
  ActOut,            // activity lasts until an outgoing transition; transition follows it
  ActIn,             // activity lasted since an ingoing transition; transition precedes it
  CondExcl,          // conditional branches are exclusive
  CondPunct,         // conditional gateway is punctual
  SplitSync,         // split fires all outgoing transitions together
  JoinSync,          // join requires all ingoing transitions together
  GatewayPunct,      // split-join gateway is punctual
  EndStable,         // a terminated workflow never resumes
  ExcPunctual,       // punctual exception never holds twice in a row
  ExcPermanentCatch, // permanent exception lasts until caught, or forever
  ProbeAbort,        // unhandled probed exception blocks the activity forever
  LoopNecPunct,      // necessary condition for divergence (any probed exception)
  LoopNecPerm,       // necessary condition for divergence (permanent exceptions)
  ThrowInternal,     // internal exception needs a thrower
  ThrowExternal,     // external exception needs some running activity
  Initial,           // position-0 condition
};

std::string_view to_string(Rule rule) noexcept;

struct Provenance {
  Rule rule;
  std::string subject; // place or exception the axiom is generated for

  friend bool operator==(const Provenance &, const Provenance &) = default;
};

struct Axiom {
  ltl::Formula formula;
  Provenance provenance;
};

/// Axioms of a compiled workflow. The model formula is
/// `initial & G(axioms...)`.
struct CompilationUnit {
  ltl::Formula initial;
  std::vector<Axiom> axioms;
  std::set<std::string> alphabet;
  // Symbol roles, in declaration order, for reports on witnesses.
  std::vector<Place> places;
  std::vector<std::string> transitions;
  std::vector<std::string> exceptions;
};

/// Control-flow axioms (activities, transitions, gateways, end). Throws Error
/// if the workflow does not validate.
CompilationUnit compile(const Workflow &w);

/// Exception axioms; included by compile().
std::vector<Axiom> compile_exceptions(const Workflow &w);

/// start & every other place and transition false.
ltl::Formula initial_condition(const Workflow &w);

ltl::Formula model_formula(const CompilationUnit &cu);

/// `# Tag subject` comment line, then the axiom, for every axiom; the initial
/// condition comes first.
std::string emit_ltl(const CompilationUnit &cu);

} // namespace wfltl
