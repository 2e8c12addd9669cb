#pragma once

#include <stdexcept>
#include <string>

namespace toric {

// A documented precondition of an operation does not hold for the input.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured size bound was exceeded.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// The input lies outside the mathematical domain of the operation
// (e.g. a moment vector outside the polytope).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An iterative method hit its iteration limit.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// Malformed text input (rationals, polynomials, problem files).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace toric
