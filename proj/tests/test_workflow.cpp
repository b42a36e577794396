#include "support.hpp"

#include "wfltl/error.hpp"
#include "wfltl/workflow.hpp"

#include <doctest.h>

#include <algorithm>
#include <functional>

using namespace wfltl;

namespace {

Workflow fixture(const std::string &name) {
  return parse_workflow(testing::slurp(testing::source_path("tests/fixtures/" + name)));
}

// Chain of activities and conditional diamonds with random exception roles.
Workflow random_workflow(std::mt19937_64 &rng) {
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  Workflow w;
  int counter = 0;
  auto name = [&](const char *stem) { return std::string(stem) + std::to_string(counter++); };
  auto link = [&](const std::string &a, const std::string &b) {
    w.transitions.push_back({name("t"), a, b});
  };
  w.places.push_back({"s0", PlaceKind::Start});
  std::string cur = "s0";
  const int segments = 1 + pick(5);
  for (int s = 0; s < segments; ++s) {
    if (pick(3) == 0) {
      const std::string c = name("c"), x = name("a"), y = name("a"), m = name("m");
      w.places.push_back({c, PlaceKind::Conditional});
      w.places.push_back({x, PlaceKind::Activity});
      w.places.push_back({y, PlaceKind::Activity});
      w.places.push_back({m, PlaceKind::Conditional});
      link(cur, c);
      link(c, x);
      link(c, y);
      link(x, m);
      link(y, m);
      cur = m;
    } else {
      const std::string a = name("a");
      w.places.push_back({a, PlaceKind::Activity});
      link(cur, a);
      cur = a;
    }
  }
  w.places.push_back({"e0", PlaceKind::End});
  link(cur, "e0");
  const int excs = pick(4);
  for (int e = 0; e < excs; ++e)
    w.exceptions.push_back({name("x"), pick(2) ? Duration::Punctual : Duration::Permanent});
  const auto acts = w.activities();
  for (const auto &exc : w.exceptions)
    for (auto *map : {&w.throws, &w.catches, &w.probes})
      if (pick(3) == 0)
        (*map)[acts[static_cast<std::size_t>(pick(static_cast<int>(acts.size())))]].insert(exc.name);
  return w;
}

} // namespace

TEST_CASE("minimal workflow") {
  const Workflow w = fixture("minimal.wf");
  CHECK(w.places.size() == 3);
  CHECK(w.transitions.size() == 2);
  CHECK(validate(w).empty());
  CHECK(w.out_set("start") == std::vector<std::string>{"t_start_A"});
  CHECK(w.in_set("end") == std::vector<std::string>{"t_A_end"});
  CHECK_THROWS_AS(w.in_set("nowhere"), Error);
}

TEST_CASE("case study structure") {
  const Workflow w = testing::case_study();
  CHECK(validate(w).empty());
  CHECK(w.activities().size() == 10);
  CHECK(w.throw_set("InternalCreditCheck") == std::set<std::string>{"hf", "sf"});
  CHECK(w.throw_set("Ship") == std::set<std::string>{"tf"});
  CHECK(w.catch_set("Recovery") == std::set<std::string>{"sf"});
  CHECK(w.catch_set("Reject2") == std::set<std::string>{"tf"});
  CHECK(w.find_exception("hf")->duration == Duration::Permanent);
  CHECK(w.find_exception("sf")->duration == Duration::Permanent);
  CHECK(w.find_exception("tf")->duration == Duration::Punctual);
  CHECK(w.origin("tf") == Origin::Internal);
  CHECK(w.out_set("par_start") == std::vector<std::string>{"t1", "t2"});
  CHECK(w.find_transition("t1")->target == "Bill");
  CHECK(w.find_transition("t2")->target == "Ship");
  // start and end carry no exception roles
  for (const auto *map : {&w.throws, &w.catches, &w.probes}) {
    CHECK_FALSE(map->count("start"));
    CHECK_FALSE(map->count("end"));
  }
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(fixture("duplicate.wf"), ParseError);
  CHECK_THROWS_AS(fixture("syntax_error.wf"), ParseError);
  CHECK_THROWS_AS(parse_workflow("start s\nend e\ntrans t : s -> nowhere\n"), ParseError);
  CHECK_THROWS_AS(parse_workflow("start s\nactivity A\nthrow A { ghost }\n"), ParseError);
  CHECK_THROWS_AS(parse_workflow("start X\n"), ParseError);
}

TEST_CASE("end with an outgoing transition") {
  const auto v = validate(fixture("end_outgoing.wf"));
  REQUIRE(v.size() == 1);
  CHECK(v[0].message == "end must have out-degree 0");
  CHECK(v[0].subject == "end");
}

TEST_CASE("unreachable island and no path to end") {
  const Workflow w = fixture("unreachable.wf");
  // Independent search over an adjacency list.
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto &t : w.transitions)
    adj[t.source].push_back(t.target);
  std::set<std::string> seen;
  std::function<void(const std::string &)> dfs = [&](const std::string &p) {
    if (!seen.insert(p).second)
      return;
    for (const auto &q : adj[p])
      dfs(q);
  };
  dfs("start");
  const bool end_reachable = seen.count("end") > 0;
  const bool some_unreachable = seen.size() < w.places.size();
  const std::size_t expected = (end_reachable ? 0u : 1u) + (some_unreachable ? 1u : 0u);
  CHECK(expected == 2);

  const auto v = validate(w);
  CHECK(v.size() == expected);
  CHECK(std::any_of(v.begin(), v.end(),
                    [](const auto &x) { return x.message == "no path from start to an end place"; }));
  CHECK(std::any_of(v.begin(), v.end(), [](const auto &x) {
    return x.message == "places unreachable from start: A, D, end";
  }));
}

TEST_CASE("degree and shape violations") {
  CHECK_FALSE(validate(parse_workflow("start s\nend e\ntrans t : s -> s\ntrans u : s -> e\n")).empty());
  CHECK_FALSE(validate(parse_workflow("start s\nstart s2\nend e\ntrans t : s -> e\ntrans u : s2 -> e\n")).empty());
  CHECK_FALSE(validate(parse_workflow("start s\ncond c\nactivity A\nend e\n"
                                      "trans t0 : s -> c\ntrans t1 : c -> A\ntrans t2 : A -> e\n"))
                  .empty());
  Workflow w = parse_workflow("start s\nactivity A\nend e\ntrans t0 : s -> A\ntrans t1 : A -> e\n");
  w.throws["s"] = {"x"};
  CHECK(validate(w).size() == 2); // not an activity, undeclared exception
}

TEST_CASE("in and out sets partition the transitions") {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 50; ++n) {
    const Workflow w = random_workflow(rng);
    std::map<std::string, int> ins, outs;
    for (const auto &p : w.places) {
      for (const auto &t : w.in_set(p.name))
        ++ins[t];
      for (const auto &t : w.out_set(p.name))
        ++outs[t];
    }
    for (const auto &t : w.transitions) {
      CHECK(ins[t.name] == 1);
      CHECK(outs[t.name] == 1);
    }
  }
}

TEST_CASE("print then parse is the identity") {
  std::mt19937_64 rng(17);
  for (int n = 0; n < 200; ++n) {
    const Workflow w = random_workflow(rng);
    REQUIRE(validate(w).empty());
    const std::string text = print_workflow(w);
    CAPTURE(text);
    CHECK(parse_workflow(text) == w);
  }
  const Workflow cs = testing::case_study();
  CHECK(parse_workflow(print_workflow(cs)) == cs);
}
