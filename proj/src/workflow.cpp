#include "wfltl/workflow.hpp"

#include "wfltl/error.hpp"
#include "wfltl/formula.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <sstream>

namespace wfltl {

std::string_view to_string(PlaceKind kind) noexcept {
  switch (kind) {
  case PlaceKind::Activity:
    return "activity";
  case PlaceKind::Conditional:
    return "cond";
  case PlaceKind::SplitJoin:
    return "splitjoin";
  case PlaceKind::Start:
    return "start";
  case PlaceKind::End:
    return "end";
  }
  return "?";
}

std::string_view to_string(Duration duration) noexcept {
  return duration == Duration::Punctual ? "punctual" : "permanent";
}

const Place *Workflow::find_place(std::string_view name) const {
  auto it = std::find_if(places.begin(), places.end(), [&](const Place &p) { return p.name == name; });
  return it == places.end() ? nullptr : &*it;
}

const Transition *Workflow::find_transition(std::string_view name) const {
  auto it = std::find_if(transitions.begin(), transitions.end(),
                         [&](const Transition &t) { return t.name == name; });
  return it == transitions.end() ? nullptr : &*it;
}

const ExceptionDecl *Workflow::find_exception(std::string_view name) const {
  auto it = std::find_if(exceptions.begin(), exceptions.end(),
                         [&](const ExceptionDecl &e) { return e.name == name; });
  return it == exceptions.end() ? nullptr : &*it;
}

std::vector<std::string> Workflow::in_set(std::string_view place) const {
  if (!find_place(place))
    throw Error("unknown place '" + std::string(place) + "'");
  std::vector<std::string> out;
  for (const auto &t : transitions)
    if (t.target == place)
      out.push_back(t.name);
  return out;
}

std::vector<std::string> Workflow::out_set(std::string_view place) const {
  if (!find_place(place))
    throw Error("unknown place '" + std::string(place) + "'");
  std::vector<std::string> out;
  for (const auto &t : transitions)
    if (t.source == place)
      out.push_back(t.name);
  return out;
}

Origin Workflow::origin(std::string_view exception) const {
  for (const auto &[activity, set] : throws)
    if (set.count(std::string(exception)))
      return Origin::Internal;
  return Origin::External;
}

std::vector<std::string> Workflow::places_of(PlaceKind kind) const {
  std::vector<std::string> out;
  for (const auto &p : places)
    if (p.kind == kind)
      out.push_back(p.name);
  return out;
}

std::vector<std::string> Workflow::activities() const { return places_of(PlaceKind::Activity); }

namespace {

const std::set<std::string> &lookup(const ExceptionMap &map, std::string_view key) {
  static const std::set<std::string> kEmpty;
  auto it = map.find(std::string(key));
  return it == map.end() ? kEmpty : it->second;
}

} // namespace

const std::set<std::string> &Workflow::throw_set(std::string_view a) const { return lookup(throws, a); }
const std::set<std::string> &Workflow::catch_set(std::string_view a) const { return lookup(catches, a); }
const std::set<std::string> &Workflow::probe_set(std::string_view a) const { return lookup(probes, a); }

std::vector<std::string> Workflow::catchers(std::string_view exception) const {
  std::vector<std::string> out;
  for (const auto &a : activities())
    if (catch_set(a).count(std::string(exception)))
      out.push_back(a);
  return out;
}

std::vector<std::string> Workflow::throwers(std::string_view exception) const {
  std::vector<std::string> out;
  for (const auto &a : activities())
    if (throw_set(a).count(std::string(exception)))
      out.push_back(a);
  return out;
}

// ---------------------------------------------------------------------------
// DSL

namespace {

struct Token {
  std::string text;
  std::size_t line, column;
  bool ident;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&] {
    if (src[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n')
        advance();
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      Token t{"", line, col, true};
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
        t.text += src[i];
        advance();
      }
      out.push_back(std::move(t));
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({"->", line, col, false});
      advance();
      advance();
    } else if (c == ':' || c == '{' || c == '}' || c == ',') {
      out.push_back({std::string(1, c), line, col, false});
      advance();
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
  }
  return out;
}

class DslParser {
public:
  explicit DslParser(std::string_view src) : tokens_(lex(src)) {
    if (!tokens_.empty()) {
      end_line_ = tokens_.back().line;
      end_col_ = tokens_.back().column + tokens_.back().text.size();
    }
  }

  Workflow run() {
    if (tokens_.empty())
      throw ParseError("empty workflow", 1, 1);
    while (pos_ < tokens_.size())
      declaration();
    resolve();
    return std::move(w_);
  }

private:
  struct PendingTransition {
    Token source, target;
  };
  struct PendingMap {
    ExceptionMap *map;
    Token activity;
    std::vector<Token> names;
  };

  [[noreturn]] void fail(const std::string &msg, const Token &at) const {
    throw ParseError(msg, at.line, at.column);
  }
  [[noreturn]] void fail_here(const std::string &msg) const {
    if (pos_ < tokens_.size())
      fail(msg, tokens_[pos_]);
    throw ParseError(msg + " (at end of input)", end_line_, end_col_);
  }

  const Token &take_ident(const char *what) {
    if (pos_ >= tokens_.size() || !tokens_[pos_].ident)
      fail_here(std::string("expected ") + what);
    return tokens_[pos_++];
  }

  void expect(const char *symbol) {
    if (pos_ >= tokens_.size() || tokens_[pos_].ident || tokens_[pos_].text != symbol)
      fail_here(std::string("expected '") + symbol + "'");
    ++pos_;
  }

  bool at(const char *symbol) const {
    return pos_ < tokens_.size() && !tokens_[pos_].ident && tokens_[pos_].text == symbol;
  }

  void declare(const Token &name) {
    if (ltl::is_keyword(name.text))
      fail("'" + name.text + "' is a reserved formula keyword", name);
    if (!names_.insert(name.text).second)
      fail("duplicate name '" + name.text + "'", name);
  }

  void declaration() {
    const Token &kw = take_ident("a declaration keyword");
    const std::string &k = kw.text;
    if (k == "activity" || k == "cond" || k == "splitjoin" || k == "start" || k == "end") {
      const Token &name = take_ident("a place name");
      declare(name);
      const PlaceKind kind = k == "activity"    ? PlaceKind::Activity
                             : k == "cond"      ? PlaceKind::Conditional
                             : k == "splitjoin" ? PlaceKind::SplitJoin
                             : k == "start"     ? PlaceKind::Start
                                                : PlaceKind::End;
      w_.places.push_back({name.text, kind});
    } else if (k == "trans") {
      const Token &name = take_ident("a transition name");
      declare(name);
      expect(":");
      const Token &src = take_ident("a source place");
      expect("->");
      const Token &dst = take_ident("a target place");
      w_.transitions.push_back({name.text, src.text, dst.text});
      pending_transitions_.push_back({src, dst});
    } else if (k == "exception") {
      const Token &name = take_ident("an exception name");
      declare(name);
      const Token &dur = take_ident("'punctual' or 'permanent'");
      if (dur.text != "punctual" && dur.text != "permanent")
        fail("expected 'punctual' or 'permanent'", dur);
      w_.exceptions.push_back(
          {name.text, dur.text == "punctual" ? Duration::Punctual : Duration::Permanent});
    } else if (k == "throw" || k == "catch" || k == "probe") {
      ExceptionMap *map = k == "throw" ? &w_.throws : k == "catch" ? &w_.catches : &w_.probes;
      PendingMap pm{map, take_ident("an activity name"), {}};
      expect("{");
      pm.names.push_back(take_ident("an exception name"));
      while (at(",")) {
        ++pos_;
        pm.names.push_back(take_ident("an exception name"));
      }
      expect("}");
      pending_maps_.push_back(std::move(pm));
    } else {
      fail("unknown declaration '" + k + "'", kw);
    }
  }

  // References may precede declarations; resolve after the whole file is read.
  void resolve() {
    for (const auto &pt : pending_transitions_) {
      for (const Token *t : {&pt.source, &pt.target})
        if (!w_.find_place(t->text))
          fail("undeclared place '" + t->text + "'", *t);
    }
    for (const auto &pm : pending_maps_) {
      if (!w_.find_place(pm.activity.text))
        fail("undeclared place '" + pm.activity.text + "'", pm.activity);
      auto &set = (*pm.map)[pm.activity.text];
      for (const auto &e : pm.names) {
        if (!w_.find_exception(e.text))
          fail("undeclared exception '" + e.text + "'", e);
        set.insert(e.text);
      }
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t end_line_ = 1, end_col_ = 1;
  Workflow w_;
  std::set<std::string> names_;
  std::vector<PendingTransition> pending_transitions_;
  std::vector<PendingMap> pending_maps_;
};

void print_map(std::ostringstream &os, const char *kw, const ExceptionMap &map) {
  for (const auto &[activity, set] : map) {
    if (set.empty())
      continue;
    os << kw << ' ' << activity << " {";
    bool first = true;
    for (const auto &e : set) {
      os << (first ? " " : ", ") << e;
      first = false;
    }
    os << " }\n";
  }
}

} // namespace

Workflow parse_workflow(std::string_view source) { return DslParser(source).run(); }

std::string print_workflow(const Workflow &w) {
  std::ostringstream os;
  for (const auto &p : w.places)
    os << to_string(p.kind) << ' ' << p.name << '\n';
  for (const auto &t : w.transitions)
    os << "trans " << t.name << " : " << t.source << " -> " << t.target << '\n';
  for (const auto &e : w.exceptions)
    os << "exception " << e.name << ' ' << to_string(e.duration) << '\n';
  print_map(os, "throw", w.throws);
  print_map(os, "catch", w.catches);
  print_map(os, "probe", w.probes);
  return os.str();
}

// ---------------------------------------------------------------------------
// Validation

std::vector<StructuralViolation> validate(const Workflow &w) {
  std::vector<StructuralViolation> out;
  auto report = [&](std::string subject, std::string message) {
    out.push_back({std::move(subject), std::move(message)});
  };

  std::set<std::string> seen;
  auto check_name = [&](const std::string &name) {
    if (name.empty())
      report(name, "empty name");
    else if (ltl::is_keyword(name))
      report(name, "name '" + name + "' is a reserved formula keyword");
    if (!seen.insert(name).second)
      report(name, "duplicate name '" + name + "'");
  };
  for (const auto &p : w.places)
    check_name(p.name);
  for (const auto &t : w.transitions)
    check_name(t.name);
  for (const auto &e : w.exceptions)
    check_name(e.name);

  const auto starts = w.places_of(PlaceKind::Start);
  const auto ends = w.places_of(PlaceKind::End);
  if (starts.size() != 1)
    report("", "workflow must have exactly one start place (found " + std::to_string(starts.size()) + ")");
  if (ends.empty())
    report("", "workflow must have at least one end place");

  bool dangling = false;
  for (const auto &t : w.transitions) {
    if (!w.find_place(t.source) || !w.find_place(t.target)) {
      report(t.name, "transition '" + t.name + "' references an undeclared place");
      dangling = true;
    } else if (t.source == t.target) {
      report(t.name, "self-loop transition '" + t.name + "' on '" + t.source + "'");
    }
  }

  for (const auto &p : w.places) {
    std::size_t in = 0, out_deg = 0;
    for (const auto &t : w.transitions) {
      in += t.target == p.name;
      out_deg += t.source == p.name;
    }
    const std::string &n = p.name;
    switch (p.kind) {
    case PlaceKind::Start:
      if (in != 0)
        report(n, "start must have in-degree 0");
      if (out_deg < 1)
        report(n, "'" + n + "' must have at least one outgoing transition");
      break;
    case PlaceKind::End:
      if (out_deg != 0)
        report(n, "end must have out-degree 0");
      if (in < 1)
        report(n, "'" + n + "' must have at least one ingoing transition");
      break;
    case PlaceKind::Activity:
      if (out_deg < 1)
        report(n, "'" + n + "' must have at least one outgoing transition");
      if (in < 1)
        report(n, "'" + n + "' must have at least one ingoing transition");
      break;
    case PlaceKind::Conditional:
      if (!((in == 1 && out_deg == 2) || (in == 2 && out_deg == 1)))
        report(n, "conditional '" + n + "' must have 1 in / 2 out or 2 in / 1 out (has " +
                      std::to_string(in) + " in / " + std::to_string(out_deg) + " out)");
      break;
    case PlaceKind::SplitJoin:
      if (!((in == 1 && out_deg >= 2) || (in >= 2 && out_deg == 1)))
        report(n, "split-join '" + n + "' must have 1 in / n>=2 out or n>=2 in / 1 out (has " +
                      std::to_string(in) + " in / " + std::to_string(out_deg) + " out)");
      break;
    }
  }

  for (const auto *map : {&w.throws, &w.catches, &w.probes}) {
    const char *role = map == &w.throws ? "throw" : map == &w.catches ? "catch" : "probe";
    for (const auto &[key, set] : *map) {
      const Place *p = w.find_place(key);
      if (!p) {
        report(key, std::string(role) + " set declared for undeclared place '" + key + "'");
      } else if (p->kind != PlaceKind::Activity && !set.empty()) {
        report(key, std::string(role) + " set on '" + key + "' which is not an activity");
      }
      for (const auto &e : set)
        if (!w.find_exception(e))
          report(key, std::string(role) + " set of '" + key + "' names undeclared exception '" + e + "'");
    }
  }

  if (starts.size() == 1 && !dangling) {
    std::set<std::string> reached{starts.front()};
    std::deque<std::string> queue{starts.front()};
    while (!queue.empty()) {
      const std::string cur = queue.front();
      queue.pop_front();
      for (const auto &t : w.transitions)
        if (t.source == cur && reached.insert(t.target).second)
          queue.push_back(t.target);
    }
    const bool end_reached = std::any_of(ends.begin(), ends.end(),
                                         [&](const std::string &e) { return reached.count(e) > 0; });
    if (!ends.empty() && !end_reached)
      report(starts.front(), "no path from start to an end place");
    std::string unreachable;
    for (const auto &p : w.places)
      if (!reached.count(p.name))
        unreachable += (unreachable.empty() ? "" : ", ") + p.name;
    if (!unreachable.empty())
      report("", "places unreachable from start: " + unreachable);
  }
  return out;
}

} // namespace wfltl
