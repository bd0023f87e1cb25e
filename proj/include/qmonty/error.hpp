#pragma once

#include <stdexcept>
#include <string>

namespace qmonty {

/// Raised when an input violates a documented precondition (range, shape,
/// unitarity). The CLI maps it to exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operand shapes do not fit the requested operation.
class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A computed quantity broke an internal invariant, e.g. a payoff diagonal
/// with a non-negligible imaginary part. Always indicates a bug upstream.
class NumericalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// File system failures. The CLI maps it to exit code 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qmonty
