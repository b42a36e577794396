#include "wfltl/cnf.hpp"

#include "wfltl/error.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

namespace wfltl::sat {

std::string to_dimacs(const CnfInstance &cnf) {
  std::ostringstream os;
  for (const auto &[var, name] : cnf.names)
    os << "c " << var << ' ' << name << '\n';
  os << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
  for (const auto &c : cnf.clauses) {
    for (Lit l : c)
      os << l << ' ';
    os << "0\n";
  }
  return os.str();
}

CnfInstance parse_dimacs(std::string_view text) {
  CnfInstance cnf;
  bool header = false;
  std::size_t declared_clauses = 0;
  Clause current;
  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos)
      end = text.size();
    ++line_no;
    std::string line(text.substr(begin, end - begin));
    begin = end + 1;
    std::istringstream is(line);
    std::string first;
    if (!(is >> first))
      continue;
    if (first == "c") {
      std::int32_t var;
      std::string name;
      if (is >> var && is >> name)
        cnf.names[var] = name;
      continue;
    }
    if (first == "p") {
      std::string fmt;
      long vars = -1, clauses = -1;
      if (!(is >> fmt >> vars >> clauses) || fmt != "cnf" || vars < 0 || clauses < 0)
        throw ParseError("malformed problem line", line_no, 1);
      cnf.num_vars = static_cast<std::int32_t>(vars);
      declared_clauses = static_cast<std::size_t>(clauses);
      header = true;
      continue;
    }
    if (!header)
      throw ParseError("clause before problem line", line_no, 1);
    std::istringstream body(line);
    std::string tok;
    while (body >> tok) {
      char *endp = nullptr;
      const long v = std::strtol(tok.c_str(), &endp, 10);
      if (*endp != '\0')
        throw ParseError("bad literal '" + tok + "'", line_no, 1);
      if (v == 0) {
        cnf.clauses.push_back(std::move(current));
        current.clear();
      } else {
        if (std::labs(v) > cnf.num_vars)
          throw ParseError("literal out of range: " + tok, line_no, 1);
        current.push_back(static_cast<Lit>(v));
      }
    }
  }
  if (!header)
    throw ParseError("missing problem line", 1, 1);
  if (!current.empty())
    throw ParseError("unterminated clause", line_no, 1);
  if (cnf.clauses.size() != declared_clauses)
    throw ParseError("clause count mismatch", line_no, 1);
  return cnf;
}

namespace {

std::string smt_name(std::int32_t var) { return "v" + std::to_string(var); }

} // namespace

std::string to_smtlib(const CnfInstance &cnf) {
  std::ostringstream os;
  os << "(set-logic QF_UF)\n";
  for (const auto &[var, name] : cnf.names)
    os << "; " << smt_name(var) << ' ' << name << '\n';
  for (std::int32_t v = 1; v <= cnf.num_vars; ++v)
    os << "(declare-const " << smt_name(v) << " Bool)\n";
  for (const auto &c : cnf.clauses) {
    os << "(assert (or";
    if (c.empty())
      os << " false";
    for (Lit l : c) {
      if (l < 0)
        os << " (not " << smt_name(-l) << ')';
      else
        os << ' ' << smt_name(l);
    }
    os << "))\n";
  }
  os << "(check-sat)\n(get-model)\n";
  return os.str();
}

namespace {

// Minimal s-expression reader for the to_smtlib subset.
struct Sexp {
  std::string atom;
  std::vector<Sexp> items;
  bool list = false;
};

class SexpReader {
public:
  explicit SexpReader(std::string_view t) : t_(t) {}

  bool done() {
    skip();
    return i_ >= t_.size();
  }

  Sexp read() {
    skip();
    if (i_ >= t_.size())
      fail("unexpected end of input");
    if (t_[i_] == '(') {
      ++i_;
      Sexp s;
      s.list = true;
      while (true) {
        skip();
        if (i_ >= t_.size())
          fail("missing ')'");
        if (t_[i_] == ')') {
          ++i_;
          return s;
        }
        s.items.push_back(read());
      }
    }
    if (t_[i_] == ')')
      fail("unexpected ')'");
    Sexp s;
    while (i_ < t_.size() && !std::isspace(static_cast<unsigned char>(t_[i_])) && t_[i_] != '(' &&
           t_[i_] != ')' && t_[i_] != ';')
      s.atom += t_[i_++];
    return s;
  }

  [[noreturn]] void fail(const std::string &msg) const {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < i_ && k < t_.size(); ++k) {
      if (t_[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

private:
  void skip() {
    while (i_ < t_.size()) {
      if (t_[i_] == ';') {
        while (i_ < t_.size() && t_[i_] != '\n')
          ++i_;
      } else if (std::isspace(static_cast<unsigned char>(t_[i_]))) {
        ++i_;
      } else {
        break;
      }
    }
  }

  std::string_view t_;
  std::size_t i_ = 0;
};

} // namespace

CnfInstance parse_smtlib(std::string_view text) {
  CnfInstance cnf;
  std::map<std::string, std::int32_t> vars;
  SexpReader reader(text);
  auto literal = [&](const Sexp &s) -> Lit {
    if (!s.list) {
      auto it = vars.find(s.atom);
      if (it == vars.end())
        reader.fail("undeclared constant '" + s.atom + "'");
      return it->second;
    }
    if (s.items.size() == 2 && !s.items[0].list && s.items[0].atom == "not" && !s.items[1].list) {
      auto it = vars.find(s.items[1].atom);
      if (it == vars.end())
        reader.fail("undeclared constant '" + s.items[1].atom + "'");
      return -it->second;
    }
    reader.fail("unsupported literal");
  };
  while (!reader.done()) {
    const Sexp cmd = reader.read();
    if (!cmd.list || cmd.items.empty() || cmd.items[0].list)
      reader.fail("expected a command");
    const std::string &head = cmd.items[0].atom;
    if (head == "declare-const") {
      if (cmd.items.size() != 3 || cmd.items[2].atom != "Bool")
        reader.fail("only Bool constants are supported");
      vars[cmd.items[1].atom] = cnf.new_var();
    } else if (head == "assert") {
      if (cmd.items.size() != 2)
        reader.fail("malformed assert");
      const Sexp &body = cmd.items[1];
      Clause c;
      if (body.list && !body.items.empty() && body.items[0].atom == "or") {
        for (std::size_t k = 1; k < body.items.size(); ++k) {
          if (!body.items[k].list && body.items[k].atom == "false")
            continue;
          c.push_back(literal(body.items[k]));
        }
      } else {
        c.push_back(literal(body));
      }
      cnf.add(std::move(c));
    } else if (head == "set-logic" || head == "check-sat" || head == "get-model" ||
               head == "set-option" || head == "exit") {
      continue;
    } else {
      reader.fail("unsupported command '" + head + "'");
    }
  }
  return cnf;
}

} // namespace wfltl::sat
