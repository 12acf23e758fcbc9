#pragma once

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>

namespace aqs {

// Short rendering of a number for error messages (%g style).
inline std::string describe(double value) {
  std::ostringstream os;
  os << value;
  return os.str();
}

// Argument outside the domain an operation is defined on (s outside [0,1],
// N < 2, epsilon outside (0,1], ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A user-supplied evaluator produced a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested object would exceed a size guard.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Numerical breakdown: non-finite values, non-monotone parametrization,
// norm drift past a hard limit.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IntegrationError : public NumericalError {
 public:
  IntegrationError(const std::string& what, std::size_t step)
      : NumericalError(what + " (step " + std::to_string(step) + ")"), step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

}  // namespace aqs
