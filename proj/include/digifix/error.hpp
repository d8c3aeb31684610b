#pragma once

#include <stdexcept>
#include <string>

namespace digifix {

/// Invalid construction input: bad dimension, u out of range, malformed metric table,
/// coefficients outside a condition's domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation was called on inputs that do not meet its stated precondition.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Exhaustive enumeration would exceed the configured map budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A result contradicts a proven guarantee; indicates a bug in the engine.
class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace digifix
