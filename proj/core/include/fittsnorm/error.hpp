#pragma once

#include <stdexcept>
#include <string>

namespace fittsnorm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input record, flag, or configuration.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Two records claim the same (participant, bias, sequence, trial) key.
class ConflictError : public Error {
 public:
  using Error::Error;
};

/// Zero-length task axis, zero endpoint spread, or a singular covariance.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Too few observations for the requested statistic.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// Regression with no variance in the predictor.
class SingularFitError : public Error {
 public:
  using Error::Error;
};

/// Throughput that is not defined for the given inputs (e.g. slope <= 0).
class UndefinedThroughputError : public Error {
 public:
  using Error::Error;
};

/// Unreadable or unwritable stream / file.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace fittsnorm
