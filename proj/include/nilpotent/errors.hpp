#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nilpotent {

/// Malformed or out-of-contract input supplied by the caller.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed text input; the message starts with `line L, column C:`.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A configured size cap (basis letters, word length) was exceeded.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A matrix handed to a constructor that requires full form violates one of
/// the full-form conditions. `condition()` names it, e.g. "(iv)".
class ValidationError : public InputError {
 public:
  ValidationError(std::string condition, const std::string& what)
      : InputError(what), condition_(std::move(condition)) {}

  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

/// An internal invariant failed. Indicates a bug, never bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace nilpotent
