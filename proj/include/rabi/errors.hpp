#pragma once

#include <stdexcept>
#include <string>

namespace rabi {

/// Base for failures of the numerical machinery (as opposed to bad input).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Frobenius/Heun recurrence denominator vanished: exponents differ by an integer.
class ResonantExponents : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Series truncation or an iterative solver did not meet its stopping rule.
class NoConvergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The spectral parameter sits inside an exclusion zone around a pole of the local series.
class PoleProximity : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Evaluation point lies outside the region where a series is certified.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed ODE description (undeclared poles, irregular singular point, ...).
class InvalidOde : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace rabi
