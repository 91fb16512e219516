#pragma once

#include <cstddef>

#include "visco/kelvin_voigt.hpp"
#include "visco/models.hpp"
#include "visco/motion.hpp"
#include "visco/trajectory.hpp"

namespace visco {

/// Exact Maxwell impact motion with constant body force m g.
///
/// Solves x''' + (k/b) x'' + (k/m) x' = k g/b with x(0)=0, x'(0)=v0,
/// x''(0)=g. With g = 0 the expressions reduce to the classical free-impact
/// solution; acceleration is reported as g - F/m.
class MaxwellMotion {
 public:
  MaxwellMotion(const MaxwellParams& p, double g);
  MotionSample operator()(double t) const;
  const DerivedGroups& groups() const noexcept { return groups_; }

 private:
  MaxwellParams p_;
  DerivedGroups groups_;
  double g_;
  double decay_;      // zeta omega0
  double drift_;      // steady creep velocity 2 zeta g/omega0
  double vel_cos_;    // velocity = e^{-decay t}(vel_cos cos wt + vel_sin sin wt) + drift
  double vel_sin_;
  double disp_cos_;   // displacement oscillatory part, minus its value at t=0
  double disp_sin_;
  double acc_sin_;    // acceleration = e^{-decay t}(g cos wt + acc_sin sin wt)
};

/// Free impact on [0, t_c = pi/omega]. Gravity in the params is ignored.
Trajectory mx_trajectory(const MaxwellParams& p, std::size_t n_samples = kDefaultSamples);

/// Closed-form metrics of the free impact, including x_M and F_m.
ImpactMetrics mx_metrics(const MaxwellParams& p);

/// omega0 t_c and e_* of the free impact as functions of zeta alone.
double mx_tc_scaled(double zeta);
double mx_restitution(double zeta);

/// Contact end of the drop-weight impact (first positive root of F).
/// Throws PlasticImpactError after kPlasticHorizonPeriods damped periods.
double mx_drop_contact_end(const MaxwellParams& p);

Trajectory mx_drop_trajectory(const MaxwellParams& p, std::size_t n_samples = kDefaultSamples);

/// Metrics of the drop-weight impact from the exact motion.
ImpactMetrics mx_drop_metrics(const MaxwellParams& p);

/// First-order gravity corrections:
///   t_c ~ t_c0 + eps0 (1 + e0)/(e0 omega0),  e_* ~ e0 - 2 zeta eps0 (1 + e0).
/// Only t_c and e_star are set; the remaining fields are NaN.
ImpactMetrics mx_drop_metrics_asymptotic(const MaxwellParams& p);

}  // namespace visco
