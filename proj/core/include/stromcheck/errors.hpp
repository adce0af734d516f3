#pragma once

#include <stdexcept>
#include <string>

namespace stromcheck {

// Base of every diagnostic the engine raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A structural invariant of an input failed (Jacobi, J^2 = -Id, positivity, ...).
class InvariantViolation : public Error {
 public:
  InvariantViolation(std::string invariant, const std::string& detail)
      : Error(invariant + ": " + detail), invariant_(std::move(invariant)) {}
  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

// Bidegree splitting of d requested for a non-integrable almost complex structure.
class NonIntegrable : public Error {
 public:
  using Error::Error;
};

// Two independent routes to the same quantity disagree.
class ConventionFault : public Error {
 public:
  using Error::Error;
};

// Linear equation whose integral obstruction does not vanish.
class Obstruction : public Error {
 public:
  using Error::Error;
};

// Malformed or schema-invalid model / source document.
class ModelError : public Error {
 public:
  ModelError(const std::string& location, const std::string& message)
      : Error(location.empty() ? message : location + ": " + message), location_(location) {}
  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

}  // namespace stromcheck
