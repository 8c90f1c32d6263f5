#pragma once

#include <stdexcept>
#include <string>

namespace cwgng {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// 1 - 4 C1 C2 fell below the admissible tolerance.
class NegativeDiscriminant : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A structural property that must hold mathematically was violated at runtime.
class SolverInvariantViolation : public Error {
 public:
  using Error::Error;
};

/// k'(m) is too close to coth(2t) for the implicit derivative to be defined.
class TangencyError : public Error {
 public:
  using Error::Error;
};

/// Two independent computations of the same quantity disagree.
class ContradictionError : public SolverInvariantViolation {
 public:
  using SolverInvariantViolation::SolverInvariantViolation;
};

class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved_tolerance() const noexcept { return achieved_; }

 private:
  double achieved_;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

class EmptyCone : public DomainError {
 public:
  using DomainError::DomainError;
};

/// k(alpha) = 0: regime boundary, no overshoot classification exists.
class Unclassifiable : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A sampled probe disagreed with a computed label.
class ValidationError : public SolverInvariantViolation {
 public:
  using SolverInvariantViolation::SolverInvariantViolation;
};

/// Monte Carlo produced too few accepted replicas to estimate anything.
class InsufficientAcceptance : public Error {
 public:
  InsufficientAcceptance(const std::string& what, long accepted)
      : Error(what), accepted_(accepted) {}
  long accepted() const noexcept { return accepted_; }

 private:
  long accepted_;
};

}  // namespace cwgng
