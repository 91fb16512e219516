#pragma once

// Physical parameter sets for the linear impact models and the
// nondimensional groups derived from them. All quantities are SI.

#include <limits>

namespace visco {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Spring k and dashpot b in parallel, impactor mass m hitting at v0.
/// g > 0 only matters for the drop-weight variant.
struct KelvinVoigtParams {
  double m = 1.0;   // [kg]
  double k = 1.0;   // [N/m]
  double b = 0.0;   // [N s/m]
  double v0 = 1.0;  // [m/s]
  double g = 0.0;   // [m/s^2]
};

/// Spring k and dashpot b in series. b may be +inf (rigid dashpot, elastic limit).
struct MaxwellParams {
  double m = 1.0;
  double k = 1.0;
  double b = 1.0;
  double v0 = 1.0;
  double g = 0.0;
};

/// Three-element solid in the Kelvin-Voigt based configuration:
/// spring k1 in series with the parallel pair (k2, b).
struct StandardSolidParams {
  double m = 1.0;
  double k1 = 1.0;
  double k2 = 1.0;
  double b = 1.0;
  double v0 = 1.0;
};

/// Maxwell-based configuration of the same solid: spring kappa1 in
/// parallel with a Maxwell arm (kappa2, beta_dashpot).
struct StandardSolidMaxwellForm {
  double kappa1 = 1.0;
  double kappa2 = 1.0;
  double beta_dashpot = 1.0;
};

/// Nondimensional groups. Fields a model does not define are NaN.
struct DerivedGroups {
  double omega0 = kNaN;  // undamped natural frequency [rad/s]
  double omega = kNaN;   // damped frequency [rad/s]
  double beta = kNaN;    // KV decay rate b/(2m) [1/s]
  double eta = kNaN;     // KV loss factor
  double zeta = kNaN;    // Maxwell loss factor
  double rho = kNaN;     // k_inf / k0
  double Lambda = kNaN;  // k0 tau_R^2 / m
  double tau_R = kNaN;   // relaxation time [s]
  double eps0 = kNaN;    // gravity parameter g/(omega0 v0)
  double k0 = kNaN;      // instantaneous stiffness [N/m]
  double k_inf = kNaN;   // long-term stiffness [N/m]
};

/// Throws DomainError unless m, k > 0, b >= 0, v0 > 0, g >= 0 and eta < 1.
DerivedGroups derive_kv(const KelvinVoigtParams& p);

/// Throws DomainError unless m, k, b, v0 > 0, g >= 0 and zeta < 1.
DerivedGroups derive_maxwell(const MaxwellParams& p);

/// k0 = k1, k_inf = k1 k2/(k1+k2), tau_R = b/(k1+k2). omega0 uses k0.
DerivedGroups derive_sls(const StandardSolidParams& p);

/// Maxwell-form (kappa1, kappa2, beta) to Kelvin-Voigt-form (k1, k2, b).
/// Only the stiffness fields of the result are meaningful; m and v0 keep defaults.
StandardSolidParams convert_configurations(const StandardSolidMaxwellForm& f);

/// Inverse of convert_configurations.
StandardSolidMaxwellForm invert_configuration(const StandardSolidParams& p);

/// Relaxation stiffness k(t) = k_inf + (k0 - k_inf) exp(-t/tau_R).
double relaxation_stiffness(const StandardSolidParams& p, double t);

/// The same relaxation stiffness written for the Maxwell-form configuration,
/// k(t) = kappa1 + kappa2 exp(-t kappa2/beta).
double relaxation_stiffness(const StandardSolidMaxwellForm& f, double t);

}  // namespace visco
