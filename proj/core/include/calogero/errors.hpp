#pragma once

#include <stdexcept>
#include <string>

namespace calogero {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at a pole (Γ or ψ at a nonpositive integer).
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Series, quadrature or iteration failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A root could not be bracketed, or a bracket violated its expected monotone structure.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// ODE integration aborted; `reached()` is the last accepted abscissa.
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double reached)
      : Error(what + " (reached x = " + std::to_string(reached) + ")"), reached_(reached) {}
  double reached() const noexcept { return reached_; }

 private:
  double reached_;
};

}  // namespace calogero
