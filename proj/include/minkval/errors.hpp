#pragma once

#include <stdexcept>
#include <string>

namespace minkval {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Points or bodies of different ambient dimensions were combined.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// The input is too degenerate for the requested operation
/// (e.g. facets of a lower-dimensional body, zero-volume denominator).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// A precondition on a scalar or vector argument does not hold
/// (negative scale factor, zero direction, unknown catalog name, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed external data (body/operator/direction JSON, rational strings).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// An operator left the model it was assumed to belong to: interpolation
/// residual at the held-out node is nonzero, or the point-image dimension
/// is inconsistent.
class ModelViolation : public Error {
 public:
  using Error::Error;
};

/// Held-out interpolation node disagrees with the fitted polynomial.
class DegreeExceeded : public ModelViolation {
 public:
  using ModelViolation::ModelViolation;
};

/// A check was asked of an operator lacking a required structural property.
class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

/// A Steiner-dependent operator was evaluated in exact mode.
class ExactModeViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace minkval
