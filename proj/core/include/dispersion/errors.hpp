#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dispersion {

/// Malformed point file or scalar literal. Carries the 1-based line number
/// when the error came from a multi-line input (0 otherwise).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An exact computation refused to run because its projected cost exceeds
/// the configured budget. Exact engines never truncate silently.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the documented domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace dispersion
