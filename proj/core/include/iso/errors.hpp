#pragma once

#include <stdexcept>
#include <string>

namespace iso {

// Root of the library's exception hierarchy. The CLI maps subclasses onto
// exit codes (usage/normalization -> 2, inconsistency -> 4).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller violated a documented precondition (mismatched truncation orders,
// truncation too small for the requested degree, index out of range, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

// Malformed serialized input.
class ParseError : public Error {
 public:
  using Error::Error;
};

// The quadratic part of a Hamiltonian is not exactly 2*pi*z*zbar.
class NormalizationError : public Error {
 public:
  explicit NormalizationError(const std::string& what)
      : Error(what + " (rescale the Hamiltonian first, e.g. `iso normalize`)") {}
};

// The quadratic part cannot be brought to 2*pi*z*zbar by a scalar rescaling.
class UnsupportedNormalizationError : public Error {
 public:
  using Error::Error;
};

// A closed-form denominator vanished; the point lies on a resonance.
class ResonanceError : public Error {
 public:
  using Error::Error;
};

// The unknown of a triangular solve step has a vanishing coefficient.
class SolverDegeneracyError : public Error {
 public:
  using Error::Error;
};

class IntegrationError : public Error {
 public:
  using Error::Error;
};

// No return to the Poincare section before the time limit.
class NonPeriodicError : public IntegrationError {
 public:
  using IntegrationError::IntegrationError;
};

class StiffnessError : public IntegrationError {
 public:
  using IntegrationError::IntegrationError;
};

// An internal cross-check failed; indicates a bug rather than bad input.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace iso
