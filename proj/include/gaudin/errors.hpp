#pragma once

#include <stdexcept>
#include <string>

namespace gaudin {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (rationals, model files).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation
/// (degree out of range, pole of a lowering field, coincident roots, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A Gordan coefficient would divide by zero: λ1 < m.
class SingularCoefficientError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Construction requested outside the regime where it is a theorem.
class UnsupportedRegimeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Numerical failure: carries the worst residual observed.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double worst)
      : Error(what), worst_residual_(worst) {}
  double worst_residual() const noexcept { return worst_residual_; }

 private:
  double worst_residual_;
};

class DiagonalizationFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class CompletenessFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace gaudin
