#pragma once

#include "wfltl/formula.hpp"
#include "wfltl/lasso.hpp"
#include "wfltl/workflow.hpp"

#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace testing {

using wfltl::LassoTrace;
using wfltl::PropSet;
using wfltl::ltl::Formula;
using wfltl::ltl::Op;

inline std::string source_path(const std::string &rel) { return std::string(WFLTL_SOURCE_DIR) + "/" + rel; }

inline std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline wfltl::Workflow case_study() {
  return wfltl::parse_workflow(slurp(source_path("models/order_processing.wf")));
}

inline Formula property(int n) {
  return wfltl::ltl::parse_formula(slurp(source_path("models/properties/p" + std::to_string(n) + ".ltl")));
}

/// Random formulas over `props`. `past` enables Y and S/T.
class FormulaGen {
public:
  FormulaGen(std::vector<std::string> props, std::uint64_t seed, bool past = true)
      : props_(std::move(props)), rng_(seed), past_(past) {}

  Formula operator()(int depth) {
    using namespace wfltl::ltl;
    if (depth == 0 || pick(5) == 0) {
      const auto r = pick(12);
      if (r == 0)
        return top();
      if (r == 1)
        return bottom();
      return prop(props_[pick(props_.size())]);
    }
    const int sub = depth - 1;
    for (;;) {
      switch (pick(13)) {
      case 0:
        return negate((*this)(sub));
      case 1:
        return conj((*this)(sub), (*this)(sub));
      case 2:
        return disj((*this)(sub), (*this)(sub));
      case 3:
        return implies((*this)(sub), (*this)(sub));
      case 4:
        return iff((*this)(sub), (*this)(sub));
      case 5:
        return next((*this)(sub));
      case 6:
        return until((*this)(sub), (*this)(sub));
      case 7:
        return release((*this)(sub), (*this)(sub));
      case 8:
        return eventually((*this)(sub));
      case 9:
        return globally((*this)(sub));
      case 10:
        if (past_)
          return prev((*this)(sub));
        break;
      case 11:
        if (past_)
          return since((*this)(sub), (*this)(sub));
        break;
      case 12:
        if (past_)
          return trigger((*this)(sub), (*this)(sub));
        break;
      }
    }
  }

  LassoTrace lasso(std::size_t max_prefix, std::size_t max_loop) {
    LassoTrace t;
    t.prefix.resize(pick(max_prefix + 1));
    t.loop.resize(1 + pick(max_loop));
    for (auto *part : {&t.prefix, &t.loop})
      for (auto &letter : *part)
        for (const auto &p : props_)
          if (pick(2))
            letter.insert(p);
    return t;
  }

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  std::mt19937_64 &rng() { return rng_; }

private:
  std::vector<std::string> props_;
  std::mt19937_64 rng_;
  bool past_;
};

/// Reference semantics by fixpoint iteration on an explicit unrolling of the
/// lasso: the loop is copied often enough for every past subformula to
/// settle, the last position's successor wraps back one period, U is the
/// least and R the greatest fixpoint of its expansion law.
class NaiveEvaluator {
public:
  NaiveEvaluator(const Formula &f, const LassoTrace &t) : t_(t) {
    period_ = t.loop.size();
    n_ = t.prefix.size() + period_ * (wfltl::ltl::size(f) + 1);
    root_ = f;
  }

  bool at(std::size_t i) {
    const auto &v = values(root_);
    while (i >= n_)
      i -= period_;
    return v[i];
  }

private:
  std::size_t succ(std::size_t i) const { return i + 1 < n_ ? i + 1 : n_ - period_; }

  const std::vector<bool> &values(const Formula &f) {
    if (auto it = memo_.find(f.get()); it != memo_.end())
      return it->second;
    std::vector<bool> v(n_);
    switch (f.op()) {
    case Op::True:
      v.assign(n_, true);
      break;
    case Op::False:
      break;
    case Op::Prop:
      for (std::size_t i = 0; i < n_; ++i)
        v[i] = t_.at(i).count(f.name()) > 0;
      break;
    case Op::Not: {
      const auto a = values(f.lhs());
      for (std::size_t i = 0; i < n_; ++i)
        v[i] = !a[i];
      break;
    }
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Iff: {
      const auto a = values(f.lhs());
      const auto b = values(f.rhs());
      for (std::size_t i = 0; i < n_; ++i) {
        switch (f.op()) {
        case Op::And:
          v[i] = a[i] && b[i];
          break;
        case Op::Or:
          v[i] = a[i] || b[i];
          break;
        case Op::Implies:
          v[i] = !a[i] || b[i];
          break;
        default:
          v[i] = a[i] == b[i];
        }
      }
      break;
    }
    case Op::Next: {
      const auto a = values(f.lhs());
      for (std::size_t i = 0; i < n_; ++i)
        v[i] = a[succ(i)];
      break;
    }
    case Op::Prev:
    case Op::WeakPrev: {
      const auto a = values(f.lhs());
      v[0] = f.op() == Op::WeakPrev;
      for (std::size_t i = 1; i < n_; ++i)
        v[i] = a[i - 1];
      break;
    }
    case Op::Since:
    case Op::Trigger: {
      const auto a = values(f.lhs());
      const auto b = values(f.rhs());
      const bool s = f.op() == Op::Since;
      for (std::size_t i = 0; i < n_; ++i) {
        if (i == 0)
          v[i] = b[0];
        else
          v[i] = s ? (b[i] || (a[i] && v[i - 1])) : (b[i] && (a[i] || v[i - 1]));
      }
      break;
    }
    case Op::Until:
    case Op::Release:
    case Op::Eventually:
    case Op::Globally: {
      const bool least = f.op() == Op::Until || f.op() == Op::Eventually;
      const bool unary = f.op() == Op::Eventually || f.op() == Op::Globally;
      const std::vector<bool> a = unary ? std::vector<bool>(n_, least) : values(f.lhs());
      const std::vector<bool> b = values(unary ? f.lhs() : f.rhs());
      v.assign(n_, !least);
      for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = n_; i-- > 0;) {
          const bool nv = least ? (b[i] || (a[i] && v[succ(i)])) : (b[i] && (a[i] || v[succ(i)]));
          if (nv != v[i]) {
            v[i] = nv;
            changed = true;
          }
        }
      }
      break;
    }
    }
    return memo_.emplace(f.get(), std::move(v)).first->second;
  }

  const LassoTrace &t_;
  std::size_t period_ = 1;
  std::size_t n_ = 0;
  Formula root_;
  std::map<const Formula::Node *, std::vector<bool>> memo_;
};

inline bool naive_eval(const Formula &f, const LassoTrace &t, std::size_t i = 0) {
  return NaiveEvaluator(f, t).at(i);
}

} // namespace testing
