#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace bsv {

/// Input outside an operation's domain: invalid index, non-ideal set,
/// mismatched coefficient rings, malformed text.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured size guard was exceeded.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation at a point failed (e.g. a denominator vanished mod p).
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by exact division when the divisor does not divide; carries the
/// first offending term as text.
class NotDivisible : public std::runtime_error {
 public:
  explicit NotDivisible(std::string witness)
      : std::runtime_error("not divisible: witness term " + witness),
        witness_(std::move(witness)) {}

  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string witness_;
};

}  // namespace bsv
