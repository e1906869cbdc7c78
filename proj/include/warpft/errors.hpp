#pragma once

#include <stdexcept>

namespace warpft {

// Invalid usage: malformed arguments, configs, schemas, or labels.
// The CLI maps this family to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numeric argument lies outside the domain of the requested map
// (non-finite input, value off the supported branch).
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Numeric failure during an otherwise well-formed computation.
// The CLI maps this family to exit code 1.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A derivative or Jacobian vanished or diverged where a finite positive
// value is required.
class SingularityError : public NumericError {
 public:
  using NumericError::NumericError;
};

// A signal or profile fails to decay at its grid ends, so truncating the
// integral to the grid would be unsound.
class DecayError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Explicit time stepping rejected: step size violates the stability bound,
// or a blow-up was detected while marching.
class StepSizeError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace warpft
