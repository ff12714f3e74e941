#pragma once

#include <stdexcept>
#include <string>

namespace radon {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller violated a function precondition (bad exponent, empty grid, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// A value lies outside the domain an object was declared on.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A requested integral does not exist (non-integrable density).
class IntegrabilityError : public Error {
 public:
  using Error::Error;
};

// A numeric routine could not certify the requested accuracy.  Carries the
// best estimate it had so callers can still inspect partial results.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double best_value, double err_est)
      : Error(what), best_value(best_value), err_est(err_est) {}
  double best_value;
  double err_est;
};

// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// A scenario configuration is malformed or names an unknown scenario.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace radon
