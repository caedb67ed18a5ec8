#pragma once

#include <stdexcept>
#include <string>

namespace randers {

/// Input outside the domain of an operation (point outside the disc, b >= 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A curve violates admissibility (r(t) leaves (0,1) or the velocity vanishes).
class AdmissibilityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A numerical procedure failed its own consistency check.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QuadratureError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class IntegrationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BracketingError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ExhaustionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace randers
