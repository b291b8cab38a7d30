#pragma once

#include <stdexcept>
#include <string>

namespace metafun {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation requested at (or within the guard radius of) a pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Result magnitude not representable as a finite double.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Run configuration rejected before any computation.
class ConfigError : public DomainError {
 public:
  using DomainError::DomainError;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// Root finder could not establish or keep a sign-change bracket.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// A mean-value point that must exist was not located.
class NoRootError : public Error {
 public:
  using Error::Error;
};

/// One of the hybrid constants vanished to tolerance; retry with a perturbed U.
class DegenerateConstantsError : public Error {
 public:
  using Error::Error;
};

class LocusNotFoundError : public Error {
 public:
  using Error::Error;
};

/// Level-curve continuation could not take a step after repeated halving.
class StepFailureError : public Error {
 public:
  using Error::Error;
};

/// Two row equations do not share the same neutral factor.
class NeutralFactorMismatch : public Error {
 public:
  using Error::Error;
};

/// Locus targets disagree with the hybrid constants a row is built from.
class ProvenanceMismatch : public Error {
 public:
  using Error::Error;
};

class ResidueMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace metafun
