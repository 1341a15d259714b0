#pragma once

#include <stdexcept>
#include <string>

namespace anoma {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user-supplied parameter (rolloff out of range, T <= 0, g outside (0,1], ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Matrix or vector dimensions do not agree, or a matrix is not symmetric.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Unsupported dimension for a geometric operation (hulls beyond 3D).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Power allocation violates its budget or has negative entries.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Delay profile with repeated or out-of-range offsets.
class DegenerateProfileError : public Error {
 public:
  using Error::Error;
};

/// Failures of numerical procedures: non-convergence, singular systems.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Gram-Schmidt input that is linearly dependent under the inner product.
class DependenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The correlation matrix is too ill-conditioned to precode over.
class PrecodingError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace anoma
