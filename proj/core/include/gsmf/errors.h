#ifndef GSMF_ERRORS_H_
#define GSMF_ERRORS_H_

#include <stdexcept>
#include <string>

namespace gsmf {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes or lengths of the inputs do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A scalar parameter is outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A factorization or inverse could not be formed.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// The requested operation is not available for this object
// (e.g. column prox of a non-separable regularizer).
class UnsupportedOperation : public Error {
 public:
  using Error::Error;
};

// A theorem-level precondition does not hold for the given inputs.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// The scheme/regularizer/line-search combination cannot be run.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

// An invariant that a correct implementation guarantees was violated.
// Seeing this means there is a bug, not bad input.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace gsmf

#endif  // GSMF_ERRORS_H_
