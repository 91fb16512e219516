#pragma once

#include <stdexcept>
#include <string>

namespace visco {

/// Root of every error raised by the library.
class ImpactError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters violate a model invariant (non-positive input, overdamped regime, ...).
class DomainError : public ImpactError {
 public:
  using ImpactError::ImpactError;
};

/// Drop-weight contact force never returns to zero: no rebound.
class PlasticImpactError : public ImpactError {
 public:
  using ImpactError::ImpactError;
};

/// Standard-solid characteristic cubic has D <= 0; the closed form does not apply.
class DiscriminantError : public ImpactError {
 public:
  DiscriminantError(const std::string& what, double discriminant)
      : ImpactError(what), discriminant_(discriminant) {}
  double discriminant() const noexcept { return discriminant_; }

 private:
  double discriminant_;
};

/// Numerical integrator reached its horizon with the contact force still positive.
class NoSeparationError : public ImpactError {
 public:
  using ImpactError::ImpactError;
};

/// Invalid solver configuration (step size, horizon, ...).
class ConfigError : public ImpactError {
 public:
  using ImpactError::ImpactError;
};

/// Quantity undefined at the requested point (E_dyn where the velocity vanishes).
class SingularityError : public ImpactError {
 public:
  using ImpactError::ImpactError;
};

/// Target stress is never reached during the impact.
class NoCrossingError : public ImpactError {
 public:
  using ImpactError::ImpactError;
};

/// Malformed input file. Carries 1-based row and the offending column when known.
class ParseError : public ImpactError {
 public:
  explicit ParseError(const std::string& what, int row = 0, std::string column = {})
      : ImpactError(what), row_(row), column_(std::move(column)) {}
  int row() const noexcept { return row_; }
  const std::string& column() const noexcept { return column_; }

 private:
  int row_;
  std::string column_;
};

}  // namespace visco
