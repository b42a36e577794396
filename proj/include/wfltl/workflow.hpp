#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace wfltl {

enum class PlaceKind { Activity, Conditional, SplitJoin, Start, End };

enum class Duration { Punctual, Permanent };

/// Internal exceptions are thrown by some activity; external ones come from
/// the environment.
enum class Origin { Internal, External };

std::string_view to_string(PlaceKind kind) noexcept;
std::string_view to_string(Duration duration) noexcept;

struct Place {
  std::string name;
  PlaceKind kind;

  friend bool operator==(const Place &, const Place &) = default;
};

struct Transition {
  std::string name;
  std::string source;
  std::string target;

  friend bool operator==(const Transition &, const Transition &) = default;
};

struct ExceptionDecl {
  std::string name;
  Duration duration;

  friend bool operator==(const ExceptionDecl &, const ExceptionDecl &) = default;
};

using ExceptionMap = std::map<std::string, std::set<std::string>>;

/// Directed graph of places and transitions with exception roles.
/// Declaration order is kept; compilation output follows it.
class Workflow {
public:
  std::vector<Place> places;
  std::vector<Transition> transitions;
  std::vector<ExceptionDecl> exceptions;
  ExceptionMap throws;  // activity -> exceptions it may raise
  ExceptionMap catches; // activity -> exceptions it can handle
  ExceptionMap probes;  // activity -> exceptions that endanger it

  const Place *find_place(std::string_view name) const;
  const Transition *find_transition(std::string_view name) const;
  const ExceptionDecl *find_exception(std::string_view name) const;

  /// Transitions whose target (resp. source) is `place`, in declaration
  /// order. Throws Error for an unknown place.
  std::vector<std::string> in_set(std::string_view place) const;
  std::vector<std::string> out_set(std::string_view place) const;

  /// Internal iff the exception appears in some throw set.
  Origin origin(std::string_view exception) const;

  /// Places of kind Activity, in declaration order.
  std::vector<std::string> activities() const;
  std::vector<std::string> places_of(PlaceKind kind) const;

  const std::set<std::string> &throw_set(std::string_view activity) const;
  const std::set<std::string> &catch_set(std::string_view activity) const;
  const std::set<std::string> &probe_set(std::string_view activity) const;

  /// Activities whose catch set contains `exception`, in declaration order.
  std::vector<std::string> catchers(std::string_view exception) const;
  std::vector<std::string> throwers(std::string_view exception) const;

  friend bool operator==(const Workflow &, const Workflow &) = default;
};

/// Parses the workflow DSL:
///
///   activity|cond|splitjoin|start|end NAME
///   trans NAME : SOURCE -> TARGET
///   exception NAME punctual|permanent
///   throw|catch|probe ACTIVITY { EXC, ... }
///
/// `#` starts a comment. Names must be unique across places, transitions and
/// exceptions and must not be formula keywords. Throws ParseError.
Workflow parse_workflow(std::string_view source);

/// Canonical DSL text; parse_workflow(print_workflow(w)) == w.
std::string print_workflow(const Workflow &w);

struct StructuralViolation {
  std::string subject; // offending place or transition ("" for global)
  std::string message;

  friend bool operator==(const StructuralViolation &, const StructuralViolation &) = default;
};

/// Every violated structural invariant; empty iff the workflow is valid.
std::vector<StructuralViolation> validate(const Workflow &w);

} // namespace wfltl
