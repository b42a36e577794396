#include "wfltl/lasso.hpp"

#include "wfltl/error.hpp"

#include <algorithm>
#include <unordered_map>

namespace wfltl {

const PropSet &LassoTrace::at(std::size_t i) const {
  if (i < prefix.size())
    return prefix[i];
  return loop[(i - prefix.size()) % loop.size()];
}

void require_well_formed(const LassoTrace &trace) {
  if (trace.loop.empty())
    throw Error("lasso trace must have a nonempty loop");
}

namespace ltl {
namespace {

// Ultimately periodic boolean word: bits[0..start) then bits[start..) repeated.
// The period always equals the trace's loop length.
struct Word {
  std::vector<bool> bits;
  std::size_t start = 0;

  bool at(std::size_t i, std::size_t period) const {
    if (i < bits.size())
      return bits[i];
    return bits[start + (i - start) % period];
  }
};

class Evaluator {
public:
  explicit Evaluator(const LassoTrace &trace)
      : trace_(trace), period_(trace.loop.size()), base_(trace.prefix.size()) {
    require_well_formed(trace);
  }

  const Word &word(const Formula &f) {
    auto it = memo_.find(f.get());
    if (it != memo_.end())
      return it->second;
    Word w = compute(f);
    return memo_.emplace(f.get(), std::move(w)).first->second;
  }

  std::size_t period() const { return period_; }

private:
  // Fills positions [0, start + period) with `value(i)`.
  template <class Fn> Word tabulate(std::size_t start, Fn value) const {
    Word w;
    w.start = start;
    w.bits.resize(start + period_);
    for (std::size_t i = 0; i < w.bits.size(); ++i)
      w.bits[i] = value(i);
    return w;
  }

  // One-bit forward recurrence state(i) = step(i, state(i-1)), state(-1) = init.
  // Inputs are periodic from `inputs_start`; runs until the state at some
  // position i equals the state one period earlier within the periodic part.
  template <class Step> Word forward(std::size_t inputs_start, bool init, Step step) const {
    std::vector<bool> bits;
    bool state = init;
    for (std::size_t i = 0;; ++i) {
      state = step(i, state);
      bits.push_back(state);
      if (i >= inputs_start + period_ && bits[i] == bits[i - period_]) {
        // From i - period_ on, the inputs and the state repeat.
        Word w;
        w.start = i - period_;
        bits.resize(i); // keep [0, start + period)
        w.bits = std::move(bits);
        return w;
      }
    }
  }

  Word compute(const Formula &f) {
    const std::size_t p = period_;
    switch (f.op()) {
    case Op::True:
    case Op::False: {
      const bool v = f.op() == Op::True;
      return tabulate(0, [v](std::size_t) { return v; });
    }
    case Op::Prop: {
      const std::string &name = f.name();
      return tabulate(base_, [&](std::size_t i) { return trace_.at(i).count(name) > 0; });
    }
    case Op::Not: {
      const Word &a = word(f.lhs());
      return tabulate(a.start, [&](std::size_t i) { return !a.at(i, p); });
    }
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Iff: {
      const Word &a = word(f.lhs());
      const Word &b = word(f.rhs());
      const Op op = f.op();
      return tabulate(std::max(a.start, b.start), [&](std::size_t i) {
        const bool x = a.at(i, p), y = b.at(i, p);
        switch (op) {
        case Op::And:
          return x && y;
        case Op::Or:
          return x || y;
        case Op::Implies:
          return !x || y;
        default:
          return x == y;
        }
      });
    }
    case Op::Next: {
      const Word &a = word(f.lhs());
      return tabulate(a.start, [&](std::size_t i) { return a.at(i + 1, p); });
    }
    case Op::Prev:
    case Op::WeakPrev: {
      const Word &a = word(f.lhs());
      const bool origin = f.op() == Op::WeakPrev;
      return tabulate(a.start + 1, [&](std::size_t i) { return i == 0 ? origin : a.at(i - 1, p); });
    }
    case Op::Eventually:
      return until_word(word(top()), word(f.lhs()), false);
    case Op::Globally:
      return until_word(word(bottom()), word(f.lhs()), true);
    case Op::Until:
      return until_word(word(f.lhs()), word(f.rhs()), false);
    case Op::Release:
      return until_word(word(f.lhs()), word(f.rhs()), true);
    case Op::Since:
    case Op::Trigger: {
      const Word &a = word(f.lhs());
      const Word &b = word(f.rhs());
      const bool dual = f.op() == Op::Trigger;
      const std::size_t start = std::max(a.start, b.start);
      // S: s(i) = b(i) | (a(i) & s(i-1)), s(-1) = false.  T is its dual.
      return forward(start, dual, [&](std::size_t i, bool prev) {
        return dual ? (b.at(i, p) && (a.at(i, p) || prev)) : (b.at(i, p) || (a.at(i, p) && prev));
      });
    }
    }
    throw Error("evaluate: unknown operator");
  }

  // lhs U rhs, or lhs R rhs when `release` is set.
  Word until_word(const Word &a, const Word &b, bool release) const {
    const std::size_t p = period_;
    const std::size_t start = std::max(a.start, b.start);
    Word w;
    w.start = start;
    w.bits.resize(start + p);
    // Periodic part: scan at most one period ahead.
    for (std::size_t i = start; i < start + p; ++i) {
      bool value = release;
      for (std::size_t j = i; j < i + p; ++j) {
        const bool x = a.at(j, p), y = b.at(j, p);
        if (!release) {
          if (y) {
            value = true;
            break;
          }
          if (!x) {
            value = false;
            break;
          }
        } else {
          if (!y) {
            value = false;
            break;
          }
          if (x) {
            value = true;
            break;
          }
        }
      }
      w.bits[i] = value;
    }
    // Prefix part by the expansion law, backwards.
    for (std::size_t i = start; i-- > 0;) {
      const bool x = a.at(i, p), y = b.at(i, p), nxt = w.bits[i + 1];
      w.bits[i] = release ? (y && (x || nxt)) : (y || (x && nxt));
    }
    return w;
  }

  const LassoTrace &trace_;
  std::size_t period_;
  std::size_t base_;
  std::unordered_map<const Formula::Node *, Word> memo_;
};

} // namespace

bool evaluate(const Formula &f, const LassoTrace &trace, std::size_t i) {
  Evaluator ev(trace);
  return ev.word(f).at(i, ev.period());
}

std::vector<bool> evaluate_prefix(const Formula &f, const LassoTrace &trace, std::size_t count) {
  Evaluator ev(trace);
  const Word &w = ev.word(f);
  std::vector<bool> out(count);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = w.at(i, ev.period());
  return out;
}

} // namespace ltl
} // namespace wfltl
