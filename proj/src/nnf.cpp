#include "wfltl/nnf.hpp"

#include "wfltl/error.hpp"

#include <map>
#include <utility>

namespace wfltl::ltl {
namespace {

class NnfBuilder {
public:
  Formula run(const Formula &f, bool negated) {
    const auto key = std::make_pair(f.get(), negated);
    if (auto it = memo_.find(key); it != memo_.end())
      return it->second;
    Formula out = build(f, negated);
    memo_.emplace(key, out);
    return out;
  }

private:
  Formula build(const Formula &f, bool neg) {
    switch (f.op()) {
    case Op::True:
      return neg ? bottom() : top();
    case Op::False:
      return neg ? top() : bottom();
    case Op::Prop:
      return neg ? negate(f) : f;
    case Op::Not:
      return run(f.lhs(), !neg);
    case Op::And:
    case Op::Or: {
      Formula a = run(f.lhs(), neg), b = run(f.rhs(), neg);
      return (f.op() == Op::And) != neg ? conj(a, b) : disj(a, b);
    }
    case Op::Implies: {
      // a -> b == !a | b
      Formula a = run(f.lhs(), !neg), b = run(f.rhs(), neg);
      return neg ? conj(a, b) : disj(a, b);
    }
    case Op::Iff: {
      // a <-> b == (!a | b) & (a | !b);  !(a <-> b) == (a & !b) | (!a & b)
      Formula pa = run(f.lhs(), false), na = run(f.lhs(), true);
      Formula pb = run(f.rhs(), false), nb = run(f.rhs(), true);
      if (!neg)
        return conj(disj(na, pb), disj(pa, nb));
      return disj(conj(pa, nb), conj(na, pb));
    }
    case Op::Next:
      return next(run(f.lhs(), neg));
    case Op::Prev:
      return neg ? weak_prev(run(f.lhs(), true)) : prev(run(f.lhs(), false));
    case Op::WeakPrev:
      return neg ? prev(run(f.lhs(), true)) : weak_prev(run(f.lhs(), false));
    case Op::Until:
    case Op::Release: {
      Formula a = run(f.lhs(), neg), b = run(f.rhs(), neg);
      return (f.op() == Op::Until) != neg ? until(a, b) : release(a, b);
    }
    case Op::Since:
    case Op::Trigger: {
      Formula a = run(f.lhs(), neg), b = run(f.rhs(), neg);
      return (f.op() == Op::Since) != neg ? since(a, b) : trigger(a, b);
    }
    case Op::Eventually: {
      Formula a = run(f.lhs(), neg);
      return neg ? release(bottom(), a) : until(top(), a);
    }
    case Op::Globally: {
      Formula a = run(f.lhs(), neg);
      return neg ? until(top(), a) : release(bottom(), a);
    }
    }
    throw Error("to_nnf: unknown operator");
  }

  std::map<std::pair<const Formula::Node *, bool>, Formula> memo_;
};

} // namespace

Formula to_nnf(const Formula &f) {
  NnfBuilder b;
  return b.run(f, false);
}

bool is_nnf(const Formula &f) {
  switch (f.op()) {
  case Op::True:
  case Op::False:
  case Op::Prop:
    return true;
  case Op::Not:
    return f.lhs().op() == Op::Prop;
  case Op::And:
  case Op::Or:
  case Op::Until:
  case Op::Release:
  case Op::Since:
  case Op::Trigger:
    return is_nnf(f.lhs()) && is_nnf(f.rhs());
  case Op::Next:
  case Op::Prev:
  case Op::WeakPrev:
    return is_nnf(f.lhs());
  default:
    return false;
  }
}

} // namespace wfltl::ltl
