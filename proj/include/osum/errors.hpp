#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace osum {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file. Carries the 1-based line and column of the offending
// token when known (0 means "not applicable").
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return what;
    std::string out = "line " + std::to_string(line);
    if (column != 0) out += ", column " + std::to_string(column);
    out += ": " + what;
    return out;
  }

  std::size_t line_;
  std::size_t column_;
};

// Structurally well-formed input that violates a semantic rule (unknown item,
// off-shelf occurrence, threshold out of range, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// The exhaustive oracle refused to run (or to continue) because the input is
// too large for full enumeration.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// A configured time or memory limit was exceeded.
class LimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace osum
