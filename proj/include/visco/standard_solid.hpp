#pragma once

// Standard linear solid impact: exact solution through the roots of the
// characteristic cubic z^3 + z^2 + Lambda z + Lambda rho = 0, and the
// first-order expansions around the Kelvin-Voigt (rho -> 0, k_inf fixed) and
// Maxwell (rho -> 0, k0 fixed) limits.

#include <cstddef>

#include "visco/kelvin_voigt.hpp"
#include "visco/models.hpp"
#include "visco/motion.hpp"
#include "visco/oracle.hpp"
#include "visco/trajectory.hpp"

namespace visco {

/// The cubic factors as (z + lambda1)(z^2 + 2 beta1 z + beta1^2 + zeta1^2).
struct CubicRoots {
  double lambda1 = kNaN;
  double beta1 = kNaN;
  double zeta1 = kNaN;
  double D = kNaN;  // discriminant; the roots are only returned for D > 0
};

/// D = 4 Lambda (Lambda^2 + rho) - Lambda^2 (1 + 18 rho - 27 rho^2).
double sls_discriminant(double Lambda, double rho);

/// Cardano roots. Throws DomainError unless Lambda > 0 and 0 < rho < 1, and
/// DiscriminantError when D <= 0.
CubicRoots sls_characteristic_roots(double Lambda, double rho);

/// Exact motion x(t) of the standard-solid impact (requires D > 0).
class StandardSolidMotion {
 public:
  explicit StandardSolidMotion(const StandardSolidParams& p);
  MotionSample operator()(double t) const;
  const DerivedGroups& groups() const noexcept { return groups_; }
  const CubicRoots& roots() const noexcept { return roots_; }
  /// Period of the oscillatory factor, 2 pi tau_R / zeta1.
  double period() const noexcept;

 private:
  struct Coeffs {
    double s = 0.0;  // sin(zeta1 t/tau_R) weight of the damped part
    double c = 0.0;  // cos weight
    double e = 0.0;  // weight of exp(-lambda1 t/tau_R)
  };
  StandardSolidParams p_;
  DerivedGroups groups_;
  CubicRoots roots_;
  Coeffs d_[4];  // scaled coefficients of xi, xi', xi'', xi'''
};

/// First positive root of F. Throws NoSeparationError after
/// kPlasticHorizonPeriods oscillation periods.
double sls_contact_end(const StandardSolidParams& p);

Trajectory sls_trajectory(const StandardSolidParams& p, std::size_t n_samples = kDefaultSamples);
ImpactMetrics sls_metrics(const StandardSolidParams& p);

/// Result of sls_simulate: closed form when D > 0, oracle otherwise.
struct StandardSolidRun {
  Trajectory trajectory;
  ImpactMetrics metrics;
  bool used_oracle = false;
  double discriminant = kNaN;
};

/// Closed-form solution with transparent fallback to the numerical oracle
/// (standard-solid kernel) when the cubic has no complex pair.
StandardSolidRun sls_simulate(const StandardSolidParams& p,
                              std::size_t n_samples = kDefaultSamples,
                              const OracleOptions& oracle_options = {});

/// omega0 t_c and e_* from a first-order expansion in rho.
struct PerturbationEstimate {
  double tc_scaled = kNaN;
  double e_star = kNaN;
};

/// Expansion about Kelvin-Voigt; omega0 and eta use the long-term stiffness k_inf.
PerturbationEstimate sls_perturb_kv(double eta, double rho);

/// Expansion about Maxwell; omega0 and zeta use the instantaneous stiffness k0.
PerturbationEstimate sls_perturb_maxwell(double zeta, double rho);

/// Solid with k_inf = m omega0^2, loss factor eta = b/(2 sqrt(k_inf m)) and
/// stiffness ratio rho, so that rho -> 0 recovers the Kelvin-Voigt model.
StandardSolidParams sls_params_from_kv(double eta, double rho, double m = 1.0,
                                       double k_inf = 1.0, double v0 = 1.0);

/// Solid with k0 = m omega0^2, zeta = k0/(2 omega0 b) and stiffness ratio rho,
/// so that rho -> 0 recovers the Maxwell model.
StandardSolidParams sls_params_from_maxwell(double zeta, double rho, double m = 1.0,
                                            double k0 = 1.0, double v0 = 1.0);

/// omega0 used by each expansion: sqrt(k_inf/m) and sqrt(k0/m).
double sls_kv_omega0(const StandardSolidParams& p);
double sls_maxwell_omega0(const StandardSolidParams& p);

}  // namespace visco
