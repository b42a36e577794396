#include "wfltl/formula.hpp"

#include "wfltl/error.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

namespace wfltl::ltl {

bool is_unary(Op op) noexcept {
  switch (op) {
  case Op::Not:
  case Op::Next:
  case Op::Prev:
  case Op::WeakPrev:
  case Op::Eventually:
  case Op::Globally:
    return true;
  default:
    return false;
  }
}

bool is_binary(Op op) noexcept {
  switch (op) {
  case Op::And:
  case Op::Or:
  case Op::Implies:
  case Op::Iff:
  case Op::Until:
  case Op::Since:
  case Op::Release:
  case Op::Trigger:
    return true;
  default:
    return false;
  }
}

bool is_past(Op op) noexcept {
  return op == Op::Prev || op == Op::WeakPrev || op == Op::Since || op == Op::Trigger;
}

namespace {

Formula make(Op op, std::string name, const Formula *lhs, const Formula *rhs) {
  auto node = std::make_shared<Formula::Node>();
  node->op = op;
  node->name = std::move(name);
  if (lhs)
    node->lhs = lhs->node();
  if (rhs)
    node->rhs = rhs->node();
  return Formula(std::move(node));
}

const Formula &true_constant() {
  static const Formula f = make(Op::True, {}, nullptr, nullptr);
  return f;
}

} // namespace

Formula::Formula() : node_(true_constant().node_) {}

bool operator==(const Formula &a, const Formula &b) {
  const Formula::Node *x = a.get();
  const Formula::Node *y = b.get();
  if (x == y)
    return true;
  if (x->op != y->op || x->name != y->name)
    return false;
  if (x->lhs && !(a.lhs() == b.lhs()))
    return false;
  if (x->rhs && !(a.rhs() == b.rhs()))
    return false;
  return true;
}

Formula top() { return true_constant(); }

Formula bottom() {
  static const Formula f = make(Op::False, {}, nullptr, nullptr);
  return f;
}

Formula prop(std::string name) { return make(Op::Prop, std::move(name), nullptr, nullptr); }
Formula negate(Formula f) { return make(Op::Not, {}, &f, nullptr); }
Formula conj(Formula a, Formula b) { return make(Op::And, {}, &a, &b); }
Formula disj(Formula a, Formula b) { return make(Op::Or, {}, &a, &b); }
Formula implies(Formula a, Formula b) { return make(Op::Implies, {}, &a, &b); }
Formula iff(Formula a, Formula b) { return make(Op::Iff, {}, &a, &b); }
Formula next(Formula f) { return make(Op::Next, {}, &f, nullptr); }
Formula prev(Formula f) { return make(Op::Prev, {}, &f, nullptr); }
Formula weak_prev(Formula f) { return make(Op::WeakPrev, {}, &f, nullptr); }
Formula until(Formula a, Formula b) { return make(Op::Until, {}, &a, &b); }
Formula since(Formula a, Formula b) { return make(Op::Since, {}, &a, &b); }
Formula release(Formula a, Formula b) { return make(Op::Release, {}, &a, &b); }
Formula trigger(Formula a, Formula b) { return make(Op::Trigger, {}, &a, &b); }
Formula eventually(Formula f) { return make(Op::Eventually, {}, &f, nullptr); }
Formula globally(Formula f) { return make(Op::Globally, {}, &f, nullptr); }

Formula conj(const std::vector<Formula> &fs) {
  if (fs.empty())
    return top();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i)
    acc = conj(acc, fs[i]);
  return acc;
}

Formula disj(const std::vector<Formula> &fs) {
  if (fs.empty())
    return bottom();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i)
    acc = disj(acc, fs[i]);
  return acc;
}

namespace {

void collect_atoms(const Formula &f, std::set<std::string> &out) {
  if (f.op() == Op::Prop) {
    out.insert(f.name());
    return;
  }
  if (is_unary(f.op()) || is_binary(f.op()))
    collect_atoms(f.lhs(), out);
  if (is_binary(f.op()))
    collect_atoms(f.rhs(), out);
}

} // namespace

std::set<std::string> atoms(const Formula &f) {
  std::set<std::string> out;
  collect_atoms(f, out);
  return out;
}

std::size_t depth(const Formula &f) {
  if (is_binary(f.op()))
    return 1 + std::max(depth(f.lhs()), depth(f.rhs()));
  if (is_unary(f.op()))
    return 1 + depth(f.lhs());
  return 0;
}

std::size_t size(const Formula &f) {
  if (is_binary(f.op()))
    return 1 + size(f.lhs()) + size(f.rhs());
  if (is_unary(f.op()))
    return 1 + size(f.lhs());
  return 1;
}

std::size_t past_depth(const Formula &f) {
  std::size_t below = 0;
  if (is_binary(f.op()))
    below = std::max(past_depth(f.lhs()), past_depth(f.rhs()));
  else if (is_unary(f.op()))
    below = past_depth(f.lhs());
  return below + (is_past(f.op()) ? 1 : 0);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

enum Level { kIff = 1, kImplies, kOr, kAnd, kTemporal, kUnary, kAtom };

int level(Op op) {
  switch (op) {
  case Op::Iff:
    return kIff;
  case Op::Implies:
    return kImplies;
  case Op::Or:
    return kOr;
  case Op::And:
    return kAnd;
  case Op::Until:
  case Op::Since:
  case Op::Release:
  case Op::Trigger:
    return kTemporal;
  case Op::True:
  case Op::False:
  case Op::Prop:
    return kAtom;
  default:
    return kUnary;
  }
}

const char *symbol(Op op) {
  switch (op) {
  case Op::Not:
    return "!";
  case Op::Next:
    return "X";
  case Op::Prev:
    return "Y";
  case Op::WeakPrev:
    return "Z";
  case Op::Eventually:
    return "F";
  case Op::Globally:
    return "G";
  case Op::And:
    return "&";
  case Op::Or:
    return "|";
  case Op::Implies:
    return "->";
  case Op::Iff:
    return "<->";
  case Op::Until:
    return "U";
  case Op::Since:
    return "S";
  case Op::Release:
    return "R";
  case Op::Trigger:
    return "T";
  default:
    return "?";
  }
}

bool left_assoc(Op op) { return op == Op::And || op == Op::Or; }

void print(const Formula &f, std::string &out);

void print_child(const Formula &f, bool parens, std::string &out) {
  if (parens)
    out += '(';
  print(f, out);
  if (parens)
    out += ')';
}

void print(const Formula &f, std::string &out) {
  const Op op = f.op();
  switch (op) {
  case Op::True:
    out += "true";
    return;
  case Op::False:
    out += "false";
    return;
  case Op::Prop:
    out += f.name();
    return;
  default:
    break;
  }
  if (is_unary(op)) {
    out += symbol(op);
    const bool atomic = level(f.lhs().op()) == kAtom;
    if (atomic && op != Op::Not)
      out += ' ';
    print_child(f.lhs(), !atomic, out);
    return;
  }
  const int l = level(op);
  const int ll = level(f.lhs().op());
  const int rl = level(f.rhs().op());
  const bool lp = left_assoc(op) ? ll < l : ll <= l;
  const bool rp = left_assoc(op) ? rl <= l : rl < l;
  print_child(f.lhs(), lp, out);
  out += ' ';
  out += symbol(op);
  out += ' ';
  print_child(f.rhs(), rp, out);
}

} // namespace

std::string pretty(const Formula &f) {
  std::string out;
  print(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

bool is_keyword(std::string_view word) noexcept {
  static constexpr std::string_view kWords[] = {"X", "Y", "U", "S",    "R",
                                                "T", "F", "G", "true", "false"};
  return std::find(std::begin(kWords), std::end(kWords), word) != std::end(kWords);
}

namespace {

enum class Tok { Ident, Keyword, LParen, RParen, Not, And, Or, Implies, Iff, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      const std::size_t line = line_, col = col_;
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "", line, col});
        return out;
      }
      const char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string word;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
          word += take();
        out.push_back({is_keyword(word) ? Tok::Keyword : Tok::Ident, word, line, col});
        continue;
      }
      if (c == '(' || c == ')' || c == '!' || c == '&' || c == '|') {
        take();
        const Tok kind = c == '('   ? Tok::LParen
                         : c == ')' ? Tok::RParen
                         : c == '!' ? Tok::Not
                         : c == '&' ? Tok::And
                                    : Tok::Or;
        out.push_back({kind, std::string(1, c), line, col});
        continue;
      }
      if (text_.substr(pos_, 2) == "->") {
        take();
        take();
        out.push_back({Tok::Implies, "->", line, col});
        continue;
      }
      if (text_.substr(pos_, 3) == "<->") {
        take();
        take();
        take();
        out.push_back({Tok::Iff, "<->", line, col});
        continue;
      }
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
  }

private:
  char take() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n')
          take();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Formula run() {
    Formula f = parse_iff();
    if (peek().kind != Tok::End)
      fail("unexpected '" + peek().text + "'");
    return f;
  }

private:
  const Token &peek() const { return tokens_[pos_]; }
  const Token &advance() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const std::string &message) const {
    const Token &t = peek();
    throw ParseError(t.kind == Tok::End ? message + " (at end of input)" : message, t.line,
                     t.column);
  }

  bool at_keyword(std::string_view word) const {
    return peek().kind == Tok::Keyword && peek().text == word;
  }

  Formula parse_iff() {
    Formula lhs = parse_implies();
    if (peek().kind == Tok::Iff) {
      advance();
      return iff(lhs, parse_iff());
    }
    return lhs;
  }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (peek().kind == Tok::Implies) {
      advance();
      return implies(lhs, parse_implies());
    }
    return lhs;
  }

  Formula parse_or() {
    Formula acc = parse_and();
    while (peek().kind == Tok::Or) {
      advance();
      acc = disj(acc, parse_and());
    }
    return acc;
  }

  Formula parse_and() {
    Formula acc = parse_temporal();
    while (peek().kind == Tok::And) {
      advance();
      acc = conj(acc, parse_temporal());
    }
    return acc;
  }

  Formula parse_temporal() {
    Formula lhs = parse_unary();
    if (peek().kind == Tok::Keyword) {
      const std::string &w = peek().text;
      if (w == "U" || w == "S" || w == "R" || w == "T") {
        const char which = w[0];
        advance();
        Formula rhs = parse_temporal();
        switch (which) {
        case 'U':
          return until(lhs, rhs);
        case 'S':
          return since(lhs, rhs);
        case 'R':
          return release(lhs, rhs);
        default:
          return trigger(lhs, rhs);
        }
      }
    }
    return lhs;
  }

  Formula parse_unary() {
    if (peek().kind == Tok::Not) {
      advance();
      return negate(parse_unary());
    }
    if (peek().kind == Tok::Keyword) {
      const std::string w = peek().text;
      if (w == "X" || w == "Y" || w == "F" || w == "G") {
        advance();
        Formula operand = parse_unary();
        switch (w[0]) {
        case 'X':
          return next(operand);
        case 'Y':
          return prev(operand);
        case 'F':
          return eventually(operand);
        default:
          return globally(operand);
        }
      }
    }
    return parse_atom();
  }

  Formula parse_atom() {
    const Token &t = peek();
    switch (t.kind) {
    case Tok::Ident:
      advance();
      return prop(t.text);
    case Tok::Keyword:
      if (t.text == "true") {
        advance();
        return top();
      }
      if (t.text == "false") {
        advance();
        return bottom();
      }
      fail("operator '" + t.text + "' is missing its left operand");
    case Tok::LParen: {
      advance();
      Formula inner = parse_iff();
      if (peek().kind != Tok::RParen)
        fail("expected ')'");
      advance();
      return inner;
    }
    case Tok::End:
      fail("expected a formula");
    default:
      fail("unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

} // namespace

Formula parse_formula(std::string_view text) { return Parser(Lexer(text).run()).run(); }

} // namespace wfltl::ltl
