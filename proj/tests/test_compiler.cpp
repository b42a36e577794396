#include "support.hpp"

#include "wfltl/compiler.hpp"
#include "wfltl/error.hpp"
#include "wfltl/lasso.hpp"

#include <doctest.h>

#include <algorithm>

using namespace wfltl;
using namespace wfltl::ltl;

namespace {

std::vector<std::string> texts(const CompilationUnit &cu, Rule rule, const std::string &subject) {
  std::vector<std::string> out;
  for (const auto &ax : cu.axioms)
    if (ax.provenance.rule == rule && ax.provenance.subject == subject)
      out.push_back(pretty(ax.formula));
  return out;
}

bool has(const CompilationUnit &cu, const std::string &formula) {
  const Formula f = parse_formula(formula);
  return std::any_of(cu.axioms.begin(), cu.axioms.end(),
                     [&](const Axiom &a) { return a.formula == f; });
}

} // namespace

TEST_CASE("activity rules for Bill") {
  const CompilationUnit cu = compile(testing::case_study());
  CHECK(texts(cu, Rule::ActIn, "Bill") ==
        std::vector<std::string>{"Bill -> (Bill & !t1) S t1", "t1 -> X Bill & !Bill"});
  CHECK(texts(cu, Rule::ActOut, "Bill") ==
        std::vector<std::string>{"Bill -> (Bill & !t3) U t3 | G Bill", "t3 -> Y Bill & !Bill"});
}

TEST_CASE("gateway rules") {
  const CompilationUnit cu = compile(testing::case_study());
  CHECK(texts(cu, Rule::SplitSync, "par_start") == std::vector<std::string>{"t1 <-> t2"});
  CHECK(texts(cu, Rule::GatewayPunct, "par_start") ==
        std::vector<std::string>{"par_start -> !(Y par_start) & !(X par_start)"});
  CHECK(texts(cu, Rule::JoinSync, "par_end") == std::vector<std::string>{"t3 <-> t4"});
  CHECK(texts(cu, Rule::CondExcl, "instock") == std::vector<std::string>{"t_yes -> !t_no"});
  CHECK(texts(cu, Rule::CondExcl, "sfmerge").empty()); // merges get no exclusivity
  CHECK(texts(cu, Rule::CondPunct, "sfmerge").size() == 1);
  CHECK(texts(cu, Rule::EndStable, "end") == std::vector<std::string>{"end -> G end"});
}

TEST_CASE("exception rules") {
  const CompilationUnit cu = compile(testing::case_study());
  CHECK(has(cu, "tf -> !X tf"));
  CHECK(has(cu, "tf -> Ship"));
  CHECK(has(cu, "Bill & hf -> G Bill"));
  CHECK(has(cu, "hf -> (!G hf <-> false)"));
  CHECK(has(cu, "sf -> (!G sf <-> sf U Recovery)"));
  CHECK(has(cu, "hf -> hf S (hf & InternalCreditCheck)"));
  CHECK(has(cu, "Ship & hf -> G Ship"));
  // Formula 8 for Bill: only Bill and Ship probe anything.
  CHECK(has(cu, "G Bill -> F(Bill S (Bill & (hf | sf & !Recovery | tf & !Reject2)) | Ship S (Ship & hf))"));
  CHECK(has(cu, "G Bill -> F(G(Bill & hf) | G(Bill & sf & !Recovery) | G(Ship & hf))"));
  CHECK(texts(cu, Rule::LoopNecPunct, "start").size() == 1);
}

TEST_CASE("external exceptions may come from any activity") {
  const Workflow w = parse_workflow(
      "start s\nactivity A\nactivity B\nend e\n"
      "trans t0 : s -> A\ntrans t1 : A -> B\ntrans t2 : B -> e\n"
      "exception x punctual\nexception y permanent\nprobe A { x }\ncatch B { y }\n");
  const CompilationUnit cu = compile(w);
  CHECK(texts(cu, Rule::ThrowExternal, "x") == std::vector<std::string>{"x -> A | B"});
  CHECK(texts(cu, Rule::ThrowExternal, "y") == std::vector<std::string>{"y -> y S (y & (A | B))"});
}

TEST_CASE("axiom count follows the graph") {
  const Workflow w = testing::case_study();
  const CompilationUnit cu = compile(w);
  std::size_t expected = 0;
  for (const auto &p : w.places) {
    const auto in = w.in_set(p.name).size(), out = w.out_set(p.name).size();
    expected += in ? 1 + in : 0;
    expected += out ? 1 + out : 0;
    if (p.kind == PlaceKind::Conditional)
      expected += (out == 2 ? 1 : 0) + 1;
    if (p.kind == PlaceKind::SplitJoin) {
      const auto g = in == 1 ? out : in;
      expected += g * (g - 1) / 2 + 1;
    }
    if (p.kind == PlaceKind::End)
      expected += 1;
  }
  expected += 2 * w.exceptions.size(); // duration rule and throw rule
  for (const auto &a : w.activities())
    expected += w.probe_set(a).size();
  expected += 2 * (1 + w.activities().size());
  CHECK(cu.axioms.size() == expected);
}

TEST_CASE("compilation is deterministic") {
  const Workflow w = testing::case_study();
  CHECK(emit_ltl(compile(w)) == emit_ltl(compile(w)));
  const auto text = emit_ltl(compile(w));
  CHECK(text.rfind("# Initial\n", 0) == 0);
}

TEST_CASE("alphabet and initial condition") {
  const Workflow w = parse_workflow(testing::slurp(testing::source_path("tests/fixtures/minimal.wf")));
  const CompilationUnit cu = compile(w);
  CHECK(cu.alphabet == std::set<std::string>{"A", "end", "start", "t_A_end", "t_start_A"});
  CHECK(cu.initial == parse_formula("start & !A & !end & !t_start_A & !t_A_end"));
}

TEST_CASE("minimal workflow admits the obvious run") {
  const Workflow w = parse_workflow(testing::slurp(testing::source_path("tests/fixtures/minimal.wf")));
  const Formula s = model_formula(compile(w));
  const LassoTrace run{{{"start"}, {"t_start_A"}, {"A"}, {"t_A_end"}}, {{"end"}}};
  CHECK(evaluate(s, run, 0));
  CHECK(testing::naive_eval(s, run, 0));
  const LassoTrace skip{{{"start"}, {"t_start_A"}, {"t_A_end"}}, {{"end"}}};
  CHECK_FALSE(evaluate(s, skip, 0));
}

TEST_CASE("empty axiom list") {
  CompilationUnit cu;
  cu.initial = prop("start");
  CHECK(model_formula(cu) == conj(prop("start"), globally(top())));
}

TEST_CASE("invalid workflows are rejected") {
  const Workflow w = parse_workflow(testing::slurp(testing::source_path("tests/fixtures/end_outgoing.wf")));
  CHECK_THROWS_AS(compile(w), Error);
  CHECK_THROWS_AS(compile_exceptions(w), Error);
}
