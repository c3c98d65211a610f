#pragma once

#include <stdexcept>
#include <string>

namespace refine {

// Base of every error raised by the library. Callers that only need to report
// a failure can catch this; the CLI maps the subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unknown reward, link, or loss name.
class RegistryError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Operation not defined for the given member (e.g. scores of the zero-one reward).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

// Density or joint estimation from data that cannot support it.
class EstimationError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

// Malformed or unreadable input files and records.
class InputError : public Error {
 public:
  using Error::Error;
};

// Quadrature did not converge; carries the last estimate.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double last_estimate)
      : Error(what), last_estimate_(last_estimate) {}

  double last_estimate() const noexcept { return last_estimate_; }

 private:
  double last_estimate_;
};

}  // namespace refine
