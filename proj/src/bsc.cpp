#include "wfltl/bsc.hpp"

#include "wfltl/error.hpp"
#include "wfltl/nnf.hpp"
#include "wfltl/sat.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <limits>

namespace wfltl::bsc {

using ltl::Formula;
using ltl::Op;
using sat::Lit;
using Node = Formula::Node;

namespace {

std::atomic<std::uint64_t> g_gate_checks{0};
std::atomic<std::uint64_t> g_gate_trips{0};

constexpr std::size_t kMaxBound = 1u << 20;

class Encoder {
public:
  Encoder(const Formula &f, std::size_t k) : k_(k) {
    if (k == 0)
      throw Error("bound k must be at least 1");
    if (k > kMaxBound)
      throw Error("bound overflow: k = " + std::to_string(k) + " exceeds " +
                  std::to_string(kMaxBound));
    root_ = ltl::to_nnf(f);
    check_capacity();
    enc_.k = k;
    auto &cnf = enc_.cnf;
    true_ = cnf.new_var();
    cnf.names[true_] = "true";
    cnf.add({true_});

    const auto atoms = ltl::atoms(f);
    enc_.alphabet.assign(atoms.begin(), atoms.end());
    for (std::size_t a = 0; a < enc_.alphabet.size(); ++a)
      prop_index_[enc_.alphabet[a]] = a;
    enc_.props.resize(k + 1);
    for (std::size_t i = 0; i <= k; ++i)
      for (const auto &name : enc_.alphabet) {
        const Lit v = cnf.new_var();
        cnf.names[v] = name + "@" + std::to_string(i);
        enc_.props[i].push_back(v);
      }
    encode_loop();
  }

  Encoding run() {
    enc_.cnf.add({lit(root_.get(), 0, 0)});
    return std::move(enc_);
  }

private:
  using Key = std::pair<const Node *, std::size_t>;

  // Conservative count of variables, computed before allocating anything.
  void check_capacity() {
    std::size_t nodes = 0;
    std::vector<const Node *> stack{root_.get()};
    std::map<const Node *, bool> seen;
    while (!stack.empty()) {
      const Node *n = stack.back();
      stack.pop_back();
      if (!n || seen[n])
        continue;
      seen[n] = true;
      ++nodes;
      stack.push_back(n->lhs.get());
      stack.push_back(n->rhs.get());
    }
    const double copies = static_cast<double>(past_depth(root_.get()) + 1);
    const double estimate = static_cast<double>(k_ + 1) * (static_cast<double>(nodes) * copies * 3 + 4);
    if (estimate > static_cast<double>(std::numeric_limits<Lit>::max() / 2))
      throw Error("bound overflow: encoding at k = " + std::to_string(k_) +
                  " needs more variables than a literal can index");
  }

  void encode_loop() {
    auto &cnf = enc_.cnf;
    for (std::size_t j = 0; j <= k_; ++j) {
      const Lit l = cnf.new_var();
      cnf.names[l] = "loop@" + std::to_string(j);
      enc_.loop.push_back(l);
    }
    // in_loop_[i] <-> some l_j with j <= i; exactly one selector.
    for (std::size_t i = 0; i <= k_; ++i) {
      const Lit v = cnf.new_var();
      in_loop_.push_back(v);
      const Lit l = enc_.loop[i];
      if (i == 0) {
        cnf.add({-v, l});
        cnf.add({v, -l});
      } else {
        const Lit prev = in_loop_[i - 1];
        cnf.add({-v, prev, l});
        cnf.add({v, -prev});
        cnf.add({v, -l});
        cnf.add({-l, -prev});
      }
    }
    cnf.add({in_loop_.back()});
  }

  std::size_t past_depth(const Node *n) {
    if (auto it = pd_.find(n); it != pd_.end())
      return it->second;
    std::size_t d = 0;
    if (n->lhs)
      d = past_depth(n->lhs.get());
    if (n->rhs)
      d = std::max(d, past_depth(n->rhs.get()));
    if (ltl::is_past(n->op))
      ++d;
    pd_[n] = d;
    return d;
  }

  Lit lit(const Node *n, std::size_t i, std::size_t m) {
    switch (n->op) {
    case Op::True:
      return true_;
    case Op::False:
      return -true_;
    case Op::Prop:
      return enc_.props[i][prop_index_.at(n->name)];
    case Op::Not:
      return -lit(n->lhs.get(), i, m);
    default:
      break;
    }
    m = std::min(m, past_depth(n));
    const Key key{n, m};
    auto it = vars_.find(key);
    if (it == vars_.end())
      it = define(n, m);
    return it->second[i];
  }

  // Value of `n` at the successor of position i in copy m, where d is the
  // last copy of the future operator asking.
  Lit next_lit(const Node *n, std::size_t i, std::size_t m, std::size_t d) {
    if (i < k_)
      return lit(n, i + 1, m);
    const std::size_t target = std::min({m + 1, d, past_depth(n)});
    const Key key{n, target};
    if (auto it = loop_vals_.find(key); it != loop_vals_.end())
      return it->second;
    auto &cnf = enc_.cnf;
    const Lit v = cnf.new_var();
    loop_vals_[key] = v;
    for (std::size_t j = 0; j <= k_; ++j) {
      const Lit x = lit(n, j, target);
      const Lit l = enc_.loop[j];
      cnf.add({-l, -v, x});
      cnf.add({-l, v, -x});
    }
    return v;
  }

  // Value of `n` at the predecessor of position i in copy m > 0 or i > 0.
  // At the origin of copy 0 the caller supplies the constant.
  Lit prev_lit(const Node *n, std::size_t i, std::size_t m, bool origin_value) {
    if (m == 0)
      return lit(n, i - 1, 0);
    auto &cnf = enc_.cnf;
    const Lit v = cnf.new_var();
    const Lit s = enc_.loop[i];
    const Lit a = lit(n, k_, m - 1);
    const Lit b = i > 0 ? lit(n, i - 1, m) : (origin_value ? true_ : -true_);
    cnf.add({-s, -a, v});
    cnf.add({-s, a, -v});
    cnf.add({s, -b, v});
    cnf.add({s, b, -v});
    return v;
  }

  std::map<Key, std::vector<Lit>>::iterator define(const Node *n, std::size_t m) {
    auto &cnf = enc_.cnf;
    std::vector<Lit> vs;
    for (std::size_t i = 0; i <= k_; ++i)
      vs.push_back(cnf.new_var());
    auto it = vars_.emplace(Key{n, m}, vs).first;
    const std::size_t d = past_depth(n);
    const Node *a = n->lhs.get();
    const Node *b = n->rhs.get();
    const bool origin0 = m == 0;

    for (std::size_t i = 0; i <= k_; ++i) {
      const Lit v = vs[i];
      const bool at_origin = origin0 && i == 0;
      switch (n->op) {
      case Op::And: {
        const Lit x = lit(a, i, m), y = lit(b, i, m);
        cnf.add({-v, x});
        cnf.add({-v, y});
        cnf.add({v, -x, -y});
        break;
      }
      case Op::Or: {
        const Lit x = lit(a, i, m), y = lit(b, i, m);
        cnf.add({v, -x});
        cnf.add({v, -y});
        cnf.add({-v, x, y});
        break;
      }
      case Op::Next: {
        const Lit x = next_lit(a, i, m, d);
        cnf.add({-v, x});
        cnf.add({v, -x});
        break;
      }
      case Op::Prev:
      case Op::WeakPrev: {
        const bool weak = n->op == Op::WeakPrev;
        if (at_origin) {
          cnf.add({weak ? v : -v});
          break;
        }
        const Lit x = prev_lit(a, i, m, weak);
        cnf.add({-v, x});
        cnf.add({v, -x});
        break;
      }
      case Op::Until:
      case Op::Since: {
        // v <-> b | (a & succ/pred v)
        const Lit x = lit(a, i, m), y = lit(b, i, m);
        if (n->op == Op::Since && at_origin) {
          cnf.add({-v, y});
          cnf.add({v, -y});
          break;
        }
        const Lit w = n->op == Op::Until ? next_lit(n, i, m, d) : prev_lit(n, i, m, false);
        cnf.add({v, -y});
        cnf.add({v, -x, -w});
        cnf.add({-v, y, x});
        cnf.add({-v, y, w});
        break;
      }
      case Op::Release:
      case Op::Trigger: {
        // v <-> b & (a | succ/pred v)
        const Lit x = lit(a, i, m), y = lit(b, i, m);
        if (n->op == Op::Trigger && at_origin) {
          cnf.add({-v, y});
          cnf.add({v, -y});
          break;
        }
        const Lit w = n->op == Op::Release ? next_lit(n, i, m, d) : prev_lit(n, i, m, true);
        cnf.add({-v, y});
        cnf.add({-v, x, w});
        cnf.add({v, -y, -x});
        cnf.add({v, -y, -w});
        break;
      }
      default:
        throw Error("encoder: unexpected operator in negation normal form");
      }
    }

    // Eventualities, on the periodic copy only.
    if ((n->op == Op::Until || n->op == Op::Release) && m == d) {
      const bool until = n->op == Op::Until;
      std::vector<Lit> clause{until ? -vs[k_] : vs[k_]};
      for (std::size_t i = 0; i <= k_; ++i) {
        const Lit e = cnf.new_var();
        const Lit y = lit(b, i, m);
        cnf.add({-e, in_loop_[i]});
        cnf.add({-e, until ? y : -y});
        clause.push_back(e);
      }
      cnf.add(std::move(clause));
    }
    return it;
  }

  std::size_t k_;
  Formula root_;
  Encoding enc_;
  Lit true_ = 0;
  std::vector<Lit> in_loop_;
  std::map<std::string, std::size_t> prop_index_;
  std::map<const Node *, std::size_t> pd_;
  std::map<Key, std::vector<Lit>> vars_;
  std::map<Key, Lit> loop_vals_;
};

LassoTrace gated(const ltl::Formula &f, LassoTrace trace) {
  ++g_gate_checks;
  if (!ltl::evaluate(f, trace, 0)) {
    ++g_gate_trips;
    throw Error("internal inconsistency: decoded witness does not satisfy the formula");
  }
  return trace;
}

} // namespace

Encoding encode(const ltl::Formula &f, std::size_t k) { return Encoder(f, k).run(); }

LassoTrace decode(const Encoding &enc, const std::vector<bool> &model) {
  auto value = [&](Lit l) { return model.at(static_cast<std::size_t>(l)); };
  std::size_t j = enc.k + 1;
  for (std::size_t i = 0; i <= enc.k; ++i)
    if (value(enc.loop[i])) {
      j = i;
      break;
    }
  if (j > enc.k)
    throw Error("assignment selects no loop position");
  LassoTrace trace;
  for (std::size_t i = 0; i <= enc.k; ++i) {
    PropSet letter;
    for (std::size_t a = 0; a < enc.alphabet.size(); ++a)
      if (value(enc.props[i][a]))
        letter.insert(enc.alphabet[a]);
    (i < j ? trace.prefix : trace.loop).push_back(std::move(letter));
  }
  return trace;
}

Verdict check(const ltl::Formula &f, const CheckConfig &cfg) {
  const Encoding enc = encode(f, cfg.k);
  Verdict verdict;
  verdict.k = cfg.k;
  if (cfg.solver == SolverKind::ExportOnly) {
    verdict.kind = Verdict::Kind::Exported;
    verdict.exported = export_dimacs(enc.cnf);
    return verdict;
  }
  sat::Solver solver(cfg.seed);
  solver.add(enc.cnf);
  if (solver.solve() == sat::Result::Unsat) {
    verdict.kind = Verdict::Kind::UnsatUpTo;
    return verdict;
  }
  verdict.kind = Verdict::Kind::Sat;
  verdict.witness = gated(f, decode(enc, solver.model()));
  return verdict;
}

std::vector<LassoTrace> enumerate_witnesses(const ltl::Formula &f, const CheckConfig &cfg,
                                            std::size_t limit) {
  const Encoding enc = encode(f, cfg.k);
  sat::Solver solver(cfg.seed);
  solver.add(enc.cnf);
  std::vector<LassoTrace> out;
  while (out.size() < limit && solver.solve() == sat::Result::Sat) {
    out.push_back(gated(f, decode(enc, solver.model())));
    sat::Clause block;
    for (const auto &row : enc.props)
      for (Lit l : row)
        block.push_back(solver.model_value(l) ? -l : l);
    for (Lit l : enc.loop)
      block.push_back(solver.model_value(l) ? -l : l);
    if (!solver.add_clause(block))
      break;
  }
  return out;
}

GateStats gate_stats() { return {g_gate_checks.load(), g_gate_trips.load()}; }

std::string export_dimacs(const sat::CnfInstance &cnf) { return sat::to_dimacs(cnf); }

std::string export_smtlib(const ltl::Formula &f, std::size_t k) {
  return sat::to_smtlib(encode(f, k).cnf);
}

std::string witness_to_json(const LassoTrace &trace) {
  auto rows = [](const std::vector<PropSet> &part) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &letter : part)
      arr.push_back(std::vector<std::string>(letter.begin(), letter.end()));
    return arr;
  };
  nlohmann::ordered_json j;
  j["prefix"] = rows(trace.prefix);
  j["loop"] = rows(trace.loop);
  return j.dump(2);
}

LassoTrace witness_from_json(const std::string &text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw ParseError(e.what(), 1, e.byte);
  }
  auto rows = [](const nlohmann::json &arr, const char *field) {
    if (!arr.is_array())
      throw ParseError(std::string("field '") + field + "' must be an array", 1, 1);
    std::vector<PropSet> out;
    for (const auto &row : arr) {
      if (!row.is_array())
        throw ParseError(std::string("rows of '") + field + "' must be arrays", 1, 1);
      PropSet letter;
      for (const auto &p : row) {
        if (!p.is_string())
          throw ParseError("propositions must be strings", 1, 1);
        letter.insert(p.get<std::string>());
      }
      out.push_back(std::move(letter));
    }
    return out;
  };
  if (!j.is_object() || !j.contains("prefix") || !j.contains("loop"))
    throw ParseError("witness needs 'prefix' and 'loop'", 1, 1);
  LassoTrace trace{rows(j["prefix"], "prefix"), rows(j["loop"], "loop")};
  require_well_formed(trace);
  return trace;
}

} // namespace wfltl::bsc
