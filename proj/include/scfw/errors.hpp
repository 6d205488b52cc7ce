#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scfw {

/// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point lies outside dom f, or a scalar argument is outside a function's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A caller-side contract was not met (infeasible start, gap <= 0, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed; usually an oracle bug or numerical breakdown.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Malformed numeric input such as non-finite cost vectors.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Backtracking exceeded its doubling budget.
class NonterminationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace scfw
