#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace wfltl::ltl {

/// Node kinds of LTL with past. WeakPrev (Z) only appears in negation
/// normal forms and has no surface syntax.
enum class Op {
  True,
  False,
  Prop,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Next,
  Prev,
  WeakPrev,
  Until,
  Since,
  Release,
  Trigger,
  Eventually,
  Globally,
};

bool is_unary(Op op) noexcept;
bool is_binary(Op op) noexcept;
bool is_past(Op op) noexcept;

/// Immutable formula tree with shared subterms. Copying is cheap.
class Formula {
public:
  struct Node {
    Op op;
    std::string name; // Prop only
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };

  Formula(); // true
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  Op op() const noexcept { return node_->op; }
  const std::string &name() const noexcept { return node_->name; }
  /// Operand of a unary node, left operand of a binary node.
  Formula lhs() const { return Formula(node_->lhs); }
  Formula rhs() const { return Formula(node_->rhs); }
  const Node *get() const noexcept { return node_.get(); }
  const std::shared_ptr<const Node> &node() const noexcept { return node_; }

  friend bool operator==(const Formula &a, const Formula &b);
  friend bool operator!=(const Formula &a, const Formula &b) { return !(a == b); }

private:
  std::shared_ptr<const Node> node_;
};

Formula top();
Formula bottom();
Formula prop(std::string name);
Formula negate(Formula f);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula next(Formula f);
Formula prev(Formula f);
Formula weak_prev(Formula f);
Formula until(Formula a, Formula b);
Formula since(Formula a, Formula b);
Formula release(Formula a, Formula b);
Formula trigger(Formula a, Formula b);
Formula eventually(Formula f);
Formula globally(Formula f);

/// Left-nested conjunction; the empty conjunction is `true`.
Formula conj(const std::vector<Formula> &fs);
/// Left-nested disjunction; the empty disjunction is `false`.
Formula disj(const std::vector<Formula> &fs);

std::set<std::string> atoms(const Formula &f);
/// Operator nesting depth; atoms and constants have depth 0.
std::size_t depth(const Formula &f);
/// Number of nodes in the tree (shared subterms counted once per occurrence).
std::size_t size(const Formula &f);
/// Maximal nesting of past operators (Y, Z, S, T).
std::size_t past_depth(const Formula &f);

/// Canonical text in the surface syntax. parse_formula(pretty(f)) == f.
std::string pretty(const Formula &f);

/// Parses the surface syntax:
///   ! & | -> <-> X Y U S R T F G true false, parentheses.
/// Binding, tightest first: unary, U/S/R/T, &, |, ->, <->. All binary
/// operators except & and | associate to the right.
Formula parse_formula(std::string_view text);

/// True if `word` is an operator keyword of the surface syntax.
bool is_keyword(std::string_view word) noexcept;

} // namespace wfltl::ltl
