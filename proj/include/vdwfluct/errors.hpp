#ifndef VDWFLUCT_ERRORS_HPP
#define VDWFLUCT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vdw {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed request: unknown unit kind, bad grid spec, unsupported option.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A physical or numerical input violates its documented domain.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Requested derivative order exceeds the compiled jet order, and similar.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Evaluation hit a pole (light cone, image cone, division by a zero jet).
class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, double location)
      : Error(what + " (at " + std::to_string(location) + ")"), location_(location) {}

  double location() const noexcept { return location_; }

 private:
  double location_;
};

/// Adaptive quadrature could not reach its tolerance within the panel budget.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_estimate, double error_estimate)
      : Error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

/// The epsilon-excision extrapolation was too ill-conditioned to trust.
class OracleUnreliableError : public Error {
 public:
  using Error::Error;
};

}  // namespace vdw

#endif  // VDWFLUCT_ERRORS_HPP
