#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wfltl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Syntax error in a workflow or formula source, with 1-based line/column.
class ParseError : public Error {
public:
  ParseError(const std::string &message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

} // namespace wfltl
