#pragma once

#include <stdexcept>
#include <string>

namespace twoiso {

/// Argument outside the mathematical domain of an operation (e.g. x < 1).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed input structure: bad tree skeleton, missing weights, bad file.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation's precondition on its operands does not hold
/// (non-2-isometric input, near-singular Gram matrix, non-equivalent pair...).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace twoiso
