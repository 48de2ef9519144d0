#pragma once

#include <stdexcept>
#include <string>

namespace nua {

// Base of every error raised by the library. Callers that only care about
// "did the evaluation fail" catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

// An internal error estimate exceeded the requested tolerance.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

// Point lies in t - x >= 0, outside the chart of the accelerated observer.
class RegionError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Sampled field does not decay at the window edges.
class WindowError : public Error {
 public:
  using Error::Error;
};

class SmallNuError : public DomainError {
 public:
  using DomainError::DomainError;
};

class TruncationError : public Error {
 public:
  using Error::Error;
};

class NegativeEigenvalueError : public Error {
 public:
  using Error::Error;
};

class EigenConvergenceError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace nua
