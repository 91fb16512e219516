#pragma once

#include <cstddef>

#include "visco/models.hpp"
#include "visco/motion.hpp"
#include "visco/trajectory.hpp"

namespace visco {

inline constexpr std::size_t kDefaultSamples = 1000;

/// Number of damped periods scanned for the end of a drop-weight contact
/// before the impact is declared plastic. Heuristic: the critical gravity
/// parameter is known to exist but has no closed form.
inline constexpr double kPlasticHorizonPeriods = 10.0;

/// Closed-form Kelvin-Voigt motion m x'' + b x' + k x = m g with x(0)=0, x'(0)=v0.
/// g = 0 recovers the free-impact solution.
class KelvinVoigtMotion {
 public:
  KelvinVoigtMotion(const KelvinVoigtParams& p, double g);
  MotionSample operator()(double t) const;
  const DerivedGroups& groups() const noexcept { return groups_; }

 private:
  KelvinVoigtParams p_;
  DerivedGroups groups_;
  double g_;
};

/// Free impact (gravity ignored) sampled on [0, t_c].
Trajectory kv_trajectory(const KelvinVoigtParams& p, std::size_t n_samples = kDefaultSamples);

/// Closed-form metrics of the free impact. For eta >= 0.5 the force peaks at
/// impact: t_M = 0 and F_M = 2 eta m v0 omega0.
ImpactMetrics kv_metrics(const KelvinVoigtParams& p);

/// Impact duration scaled by omega0, as a function of eta alone.
double kv_tc_scaled(double eta);
/// Coefficient of restitution as a function of eta alone.
double kv_restitution(double eta);
/// F_M / (m v0 omega0) as a function of eta alone.
double kv_peak_force_scaled(double eta);

/// Loss factor minimising the peak force, by golden-section search on (0, 1).
double kv_fm_minimizer();

/// Contact end of the drop-weight impact: first positive root of F = k x + b x'.
/// Throws PlasticImpactError when F stays positive for kPlasticHorizonPeriods.
double kv_drop_contact_end(const KelvinVoigtParams& p);

/// Drop-weight trajectory on [0, t_c] with the numerically located t_c.
Trajectory kv_drop_trajectory(const KelvinVoigtParams& p,
                              std::size_t n_samples = kDefaultSamples);

/// Metrics of the drop-weight impact from the exact motion.
ImpactMetrics kv_drop_metrics(const KelvinVoigtParams& p);

/// First-order gravity corrections to t_c and e_*, valid for small eps0.
/// Only t_c and e_star are set; the remaining fields are NaN.
ImpactMetrics kv_drop_metrics_asymptotic(const KelvinVoigtParams& p);

/// Critical gravity parameter above which the drop-weight impact does not
/// rebound, located by bisection to `tol` absolute.
double kv_find_critical_eps0(double eta, double tol = 1e-6);

}  // namespace visco
