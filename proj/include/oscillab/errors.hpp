#pragma once

#include <stdexcept>
#include <string>

namespace oscillab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// The grid step is too coarse for the requested operation.
/// `max_step()` is the largest step that would have been accepted.
class UnderResolved : public Error {
 public:
  UnderResolved(const std::string& what, double max_step)
      : Error(what), max_step_(max_step) {}
  double max_step() const noexcept { return max_step_; }

 private:
  double max_step_;
};

class OrderUnavailable : public Error {
 public:
  using Error::Error;
};

class ValidationFailed : public Error {
 public:
  using Error::Error;
};

class DegenerateSupport : public Error {
 public:
  using Error::Error;
};

class CoverageGap : public Error {
 public:
  using Error::Error;
};

class BadBand : public Error {
 public:
  using Error::Error;
};

class SupportViolation : public Error {
 public:
  using Error::Error;
};

class InsufficientPoints : public Error {
 public:
  using Error::Error;
};

class NonpositiveValue : public Error {
 public:
  using Error::Error;
};

}  // namespace oscillab
