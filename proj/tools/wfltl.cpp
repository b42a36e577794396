// wfltl: workflow validation, compilation to LTL and bounded verification.
//
// Exit codes: 0 success or HOLDS, 1 violation or unsatisfiable model,
// 2 usage or I/O error. Timing goes to stderr so stdout stays reproducible.

#include "wfltl/bsc.hpp"
#include "wfltl/compiler.hpp"
#include "wfltl/error.hpp"
#include "wfltl/oracle.hpp"
#include "wfltl/workflow.hpp"

#include <CLI11.hpp>

#include <sys/resource.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace wfltl;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text))
    throw UsageError("cannot write '" + path + "'");
}

Workflow load_workflow(const std::string &path) { return parse_workflow(read_file(path)); }

std::uint64_t seed_from_env() {
  const char *s = std::getenv("WFLTL_SEED");
  if (!s || !*s)
    return 0;
  char *end = nullptr;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (*end != '\0')
    throw UsageError("WFLTL_SEED must be a non-negative integer");
  return v;
}

class RunTimer {
public:
  explicit RunTimer(std::string command) : command_(std::move(command)) {}
  ~RunTimer() {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    rusage usage{};
    getrusage(RUSAGE_SELF, &usage);
    std::fprintf(stderr, "[%s] time %.3f s, peak memory %.1f MB\n", command_.c_str(), secs,
                 static_cast<double>(usage.ru_maxrss) / 1024.0);
  }

private:
  std::string command_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void print_witness(const bsc::Verdict &v, const CompilationUnit &cu, const std::string &trace_path) {
  const auto report = oracle::explain(*v.witness, cu);
  std::cout << oracle::render_text(report);
  if (!trace_path.empty()) {
    write_file(trace_path, bsc::witness_to_json(*v.witness) + "\n");
    std::cout << "witness: " << trace_path << '\n';
  }
}

int cmd_validate(const std::string &file) {
  const Workflow w = load_workflow(file);
  const auto violations = validate(w);
  for (const auto &v : violations)
    std::cout << v.subject << ": " << v.message << '\n';
  return violations.empty() ? kOk : kFail;
}

int cmd_compile(const std::string &file, const std::string &emit, std::size_t k,
                const std::string &out) {
  const CompilationUnit cu = compile(load_workflow(file));
  std::string text;
  if (emit == "ltl") {
    text = emit_ltl(cu);
  } else {
    if (k == 0)
      throw UsageError("--emit " + emit + " requires -k");
    const ltl::Formula model = model_formula(cu);
    text = emit == "dimacs" ? bsc::export_dimacs(bsc::encode(model, k).cnf)
                            : bsc::export_smtlib(model, k);
  }
  if (out.empty())
    std::cout << text;
  else
    write_file(out, text);
  return kOk;
}

int cmd_verify(const std::string &file, const std::string &property, std::size_t k,
               const std::string &trace_path) {
  const CompilationUnit cu = compile(load_workflow(file));
  const ltl::Formula p = ltl::parse_formula(read_file(property));
  RunTimer timer("verify");
  const auto v = bsc::check(ltl::conj(model_formula(cu), ltl::negate(p)), {k, bsc::SolverKind::Embedded, seed_from_env()});
  if (v.kind == bsc::Verdict::Kind::UnsatUpTo) {
    std::cout << "HOLDS (bounded, k=" << k << ")\n";
    return kOk;
  }
  std::cout << "VIOLATED (k=" << k << ")\n";
  print_witness(v, cu, trace_path);
  return kFail;
}

int cmd_check_model(const std::string &file, std::size_t k, const std::string &assume,
                    const std::string &trace_path) {
  const CompilationUnit cu = compile(load_workflow(file));
  ltl::Formula s = model_formula(cu);
  if (!assume.empty())
    s = ltl::conj(s, ltl::globally(ltl::parse_formula(read_file(assume))));
  RunTimer timer("check-model");
  const auto v = bsc::check(s, {k, bsc::SolverKind::Embedded, seed_from_env()});
  if (v.kind == bsc::Verdict::Kind::UnsatUpTo) {
    std::cout << "UNSAT (bounded, k=" << k << "): the model admits no execution\n";
    return kFail;
  }
  std::cout << "SAT (k=" << k << ")\n";
  if (assume.empty()) {
    print_witness(v, cu, trace_path);
  } else if (!trace_path.empty()) {
    write_file(trace_path, bsc::witness_to_json(*v.witness) + "\n");
    std::cout << "witness: " << trace_path << '\n';
  }
  return kOk;
}

int cmd_oracle(const std::string &file, const std::vector<std::string> &alphabet,
               std::size_t max_total) {
  const ltl::Formula f = ltl::parse_formula(read_file(file));
  oracle::EnumerationSpec spec;
  spec.max_total = max_total;
  if (alphabet.empty()) {
    spec.alphabet = ltl::atoms(f);
  } else {
    spec.alphabet.insert(alphabet.begin(), alphabet.end());
  }
  std::optional<LassoTrace> hit;
  try {
    hit = oracle::enumerate_sat(f, spec);
  } catch (const Error &e) {
    throw UsageError(e.what());
  }
  std::cout << (hit ? bsc::witness_to_json(*hit) : std::string("none")) << '\n';
  return kOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Workflow to LTL compiler and bounded satisfiability checker"};
  app.require_subcommand(1);

  std::string wf_file, prop_file, formula_file, emit = "ltl", out, trace, assume;
  std::size_t k = 35, compile_k = 0, max_total = 0;
  std::vector<std::string> alphabet;

  auto *validate_cmd = app.add_subcommand("validate", "Check structural well-formedness");
  validate_cmd->add_option("workflow", wf_file, "Workflow file")->required();

  auto *compile_cmd = app.add_subcommand("compile", "Emit the LTL axioms or a CNF/SMT-LIB encoding");
  compile_cmd->add_option("workflow", wf_file, "Workflow file")->required();
  compile_cmd->add_option("--emit", emit, "ltl, dimacs or smt2")
      ->check(CLI::IsMember({"ltl", "dimacs", "smt2"}));
  compile_cmd->add_option("-k", compile_k, "Bound (required for dimacs and smt2)")
      ->check(CLI::PositiveNumber);
  compile_cmd->add_option("--out", out, "Output file instead of stdout");

  auto *verify_cmd = app.add_subcommand("verify", "Check a property against the workflow");
  verify_cmd->add_option("workflow", wf_file, "Workflow file")->required();
  verify_cmd->add_option("property", prop_file, "Property file")->required();
  verify_cmd->add_option("-k", k, "Bound")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--trace", trace, "Write the counterexample as JSON");

  auto *model_cmd = app.add_subcommand("check-model", "Check that the model admits an execution");
  model_cmd->add_option("workflow", wf_file, "Workflow file")->required();
  model_cmd->add_option("-k", k, "Bound")->check(CLI::PositiveNumber);
  model_cmd->add_option("--assume", assume, "Formula file conjoined under G");
  model_cmd->add_option("--trace", trace, "Write the witness as JSON");

  auto *oracle_cmd = app.add_subcommand("oracle", "Brute-force search for a small lasso model");
  oracle_cmd->add_option("formula", formula_file, "Formula file")->required();
  oracle_cmd->add_option("--alphabet", alphabet, "Propositions (default: atoms of the formula)")
      ->delimiter(',');
  oracle_cmd->add_option("--max-total", max_total, "Bound on |prefix| + |loop|")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*validate_cmd)
      return cmd_validate(wf_file);
    if (*compile_cmd)
      return cmd_compile(wf_file, emit, compile_k, out);
    if (*verify_cmd)
      return cmd_verify(wf_file, prop_file, k, trace);
    if (*model_cmd)
      return cmd_check_model(wf_file, k, assume, trace);
    if (*oracle_cmd)
      return cmd_oracle(formula_file, alphabet, max_total);
  } catch (const UsageError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
