#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace genquad {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed element or form text. `position` is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// An operation was called outside its domain (non-definite form, non-integral
/// input, arity mismatch, division by zero, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A result that must hold by construction did not. Never expected in practice.
class ContractFailure : public Error {
 public:
  using Error::Error;
};

/// A configurable search ceiling was hit before an answer was found.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace genquad
