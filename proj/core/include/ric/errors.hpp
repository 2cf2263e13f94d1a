#pragma once

#include <stdexcept>
#include <string>

namespace ric {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Covariance matrix is numerically singular (smallest eigenvalue <= 1e-12).
class SingularCovarianceError : public Error {
 public:
  using Error::Error;
};

/// Input outside an operation's domain (bad dimensions, nonpositive scale, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A backward integration produced a nonpositive or non-finite value.
class PositivityLossError : public Error {
 public:
  using Error::Error;
};

/// A computed quantity left its admissible range (e.g. utility loss outside [0, 1]).
class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

/// A comparative-statics inequality failed on the grid.
class OrderingViolationError : public Error {
 public:
  using Error::Error;
};

/// Monte Carlo estimate disagrees with the analytic value beyond the tolerance.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace ric
