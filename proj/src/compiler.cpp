#include "wfltl/compiler.hpp"

#include "wfltl/error.hpp"

#include <sstream>

namespace wfltl {

using namespace ltl;

std::string_view to_string(Rule rule) noexcept {
  switch (rule) {
  case Rule::ActOut:
    return "ActOut";
  case Rule::ActIn:
    return "ActIn";
  case Rule::CondExcl:
    return "CondExcl";
  case Rule::CondPunct:
    return "CondPunct";
  case Rule::SplitSync:
    return "SplitSync";
  case Rule::JoinSync:
    return "JoinSync";
  case Rule::GatewayPunct:
    return "GatewayPunct";
  case Rule::EndStable:
    return "EndStable";
  case Rule::ExcPunctual:
    return "ExcPunctual";
  case Rule::ExcPermanentCatch:
    return "ExcPermanentCatch";
  case Rule::ProbeAbort:
    return "ProbeAbort";
  case Rule::LoopNecPunct:
    return "LoopNecPunct";
  case Rule::LoopNecPerm:
    return "LoopNecPerm";
  case Rule::ThrowInternal:
    return "ThrowInternal";
  case Rule::ThrowExternal:
    return "ThrowExternal";
  case Rule::Initial:
    return "Initial";
  }
  return "?";
}

namespace {

std::vector<Formula> props(const std::vector<std::string> &names) {
  std::vector<Formula> out;
  out.reserve(names.size());
  for (const auto &n : names)
    out.push_back(prop(n));
  return out;
}

// A & e & !B1 & ... for every catcher B of e. Without catchers the empty
// conjunction is dropped.
Formula unhandled(const Workflow &w, const std::string &activity, const std::string &e) {
  std::vector<Formula> parts;
  if (!activity.empty())
    parts.push_back(prop(activity));
  parts.push_back(prop(e));
  for (const auto &b : w.catchers(e))
    parts.push_back(negate(prop(b)));
  return conj(parts);
}

void require_valid(const Workflow &w) {
  const auto violations = validate(w);
  if (violations.empty())
    return;
  std::string msg = "cannot compile an invalid workflow:";
  for (const auto &v : violations)
    msg += "\n  " + v.message;
  throw Error(msg);
}

} // namespace

Formula initial_condition(const Workflow &w) {
  std::vector<Formula> parts;
  const auto start = w.places_of(PlaceKind::Start);
  if (!start.empty())
    parts.push_back(prop(start.front()));
  for (const auto &p : w.places)
    if (p.kind != PlaceKind::Start)
      parts.push_back(negate(prop(p.name)));
  for (const auto &t : w.transitions)
    parts.push_back(negate(prop(t.name)));
  return conj(parts);
}

CompilationUnit compile(const Workflow &w) {
  require_valid(w);
  CompilationUnit cu;
  cu.initial = initial_condition(w);
  auto emit = [&](Formula f, Rule rule, const std::string &subject) {
    cu.axioms.push_back({std::move(f), {rule, subject}});
  };

  for (const auto &place : w.places) {
    const Formula a = prop(place.name);
    const auto ins = w.in_set(place.name);
    const auto outs = w.out_set(place.name);

    if (!ins.empty()) {
      const Formula t_in = disj(props(ins));
      emit(implies(a, since(conj(a, negate(t_in)), t_in)), Rule::ActIn, place.name);
      for (const auto &t : ins)
        emit(implies(prop(t), conj(next(a), negate(a))), Rule::ActIn, place.name);
    }
    if (!outs.empty()) {
      const Formula t_out = disj(props(outs));
      emit(implies(a, disj(until(conj(a, negate(t_out)), t_out), globally(a))), Rule::ActOut,
           place.name);
      for (const auto &t : outs)
        emit(implies(prop(t), conj(prev(a), negate(a))), Rule::ActOut, place.name);
    }

    const Formula punctual = implies(a, conj(negate(prev(a)), negate(next(a))));
    switch (place.kind) {
    case PlaceKind::Conditional:
      if (outs.size() == 2)
        emit(implies(prop(outs[0]), negate(prop(outs[1]))), Rule::CondExcl, place.name);
      emit(punctual, Rule::CondPunct, place.name);
      break;
    case PlaceKind::SplitJoin: {
      const bool split = ins.size() == 1;
      const auto &group = split ? outs : ins;
      for (std::size_t i = 0; i < group.size(); ++i)
        for (std::size_t j = i + 1; j < group.size(); ++j)
          emit(iff(prop(group[i]), prop(group[j])), split ? Rule::SplitSync : Rule::JoinSync,
               place.name);
      emit(punctual, Rule::GatewayPunct, place.name);
      break;
    }
    case PlaceKind::End:
      emit(implies(a, globally(a)), Rule::EndStable, place.name);
      break;
    default:
      break;
    }
  }

  for (auto &ax : compile_exceptions(w))
    cu.axioms.push_back(std::move(ax));

  cu.places = w.places;
  for (const auto &t : w.transitions)
    cu.transitions.push_back(t.name);
  for (const auto &e : w.exceptions)
    cu.exceptions.push_back(e.name);
  for (const auto &p : w.places)
    cu.alphabet.insert(p.name);
  cu.alphabet.insert(cu.transitions.begin(), cu.transitions.end());
  cu.alphabet.insert(cu.exceptions.begin(), cu.exceptions.end());
  return cu;
}

std::vector<Axiom> compile_exceptions(const Workflow &w) {
  require_valid(w);
  std::vector<Axiom> out;
  auto emit = [&](Formula f, Rule rule, const std::string &subject) {
    out.push_back({std::move(f), {rule, subject}});
  };
  const auto activities = w.activities();

  for (const auto &exc : w.exceptions) {
    const Formula e = prop(exc.name);
    if (exc.duration == Duration::Punctual) {
      emit(implies(e, negate(next(e))), Rule::ExcPunctual, exc.name);
    } else {
      std::vector<Formula> restored;
      for (const auto &a : w.catchers(exc.name))
        restored.push_back(until(e, prop(a)));
      emit(implies(e, iff(negate(globally(e)), disj(restored))), Rule::ExcPermanentCatch, exc.name);
    }
  }

  for (const auto &a : activities)
    for (const auto &e : w.probe_set(a))
      emit(implies(unhandled(w, a, e), globally(prop(a))), Rule::ProbeAbort, a);

  // Divergence of A needs some activity C that met an unhandled probed
  // exception. Start is included as A: it is not an activity, but without
  // this it could hold forever.
  std::vector<std::string> divergent_candidates = w.places_of(PlaceKind::Start);
  divergent_candidates.insert(divergent_candidates.end(), activities.begin(), activities.end());

  std::vector<Formula> faulted;  // C S (C & (e & !B...) | ...)
  std::vector<Formula> stuck;    // G(C & e & !B...) for permanent e
  for (const auto &c : activities) {
    const auto &probe = w.probe_set(c);
    if (probe.empty())
      continue;
    std::vector<Formula> causes;
    for (const auto &e : probe) {
      causes.push_back(unhandled(w, "", e));
      const ExceptionDecl *decl = w.find_exception(e);
      if (decl && decl->duration == Duration::Permanent)
        stuck.push_back(globally(unhandled(w, c, e)));
    }
    faulted.push_back(since(prop(c), conj(prop(c), disj(causes))));
  }
  for (const auto &a : divergent_candidates)
    emit(implies(globally(prop(a)), eventually(disj(faulted))), Rule::LoopNecPunct, a);
  for (const auto &a : divergent_candidates)
    emit(implies(globally(prop(a)), eventually(disj(stuck))), Rule::LoopNecPerm, a);

  for (const auto &exc : w.exceptions) {
    const Formula e = prop(exc.name);
    const bool internal = w.origin(exc.name) == Origin::Internal;
    const Formula sources = disj(props(internal ? w.throwers(exc.name) : activities));
    const Rule rule = internal ? Rule::ThrowInternal : Rule::ThrowExternal;
    if (exc.duration == Duration::Punctual)
      emit(implies(e, sources), rule, exc.name);
    else
      emit(implies(e, since(e, conj(e, sources))), rule, exc.name);
  }
  return out;
}

Formula model_formula(const CompilationUnit &cu) {
  std::vector<Formula> parts;
  parts.reserve(cu.axioms.size());
  for (const auto &ax : cu.axioms)
    parts.push_back(ax.formula);
  return conj(cu.initial, globally(conj(parts)));
}

std::string emit_ltl(const CompilationUnit &cu) {
  std::ostringstream os;
  os << "# " << to_string(Rule::Initial) << '\n' << pretty(cu.initial) << '\n';
  for (const auto &ax : cu.axioms)
    os << "# " << to_string(ax.provenance.rule) << ' ' << ax.provenance.subject << '\n'
       << pretty(ax.formula) << '\n';
  return os.str();
}

} // namespace wfltl
