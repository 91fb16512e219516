#pragma once

// Helpers shared by the closed-form models: sampling an analytic motion on
// [0, t_c] and extracting impact metrics when no closed form exists.

#include <cstddef>
#include <stdexcept>

#include "visco/numerics.hpp"
#include "visco/trajectory.hpp"

namespace visco {

/// State of the impactor at one instant. F is the contact force and dF its rate.
struct MotionSample {
  double x = 0.0;
  double xdot = 0.0;
  double xddot = 0.0;
  double F = 0.0;
  double dF = 0.0;
};

/// Samples `motion(t) -> MotionSample` uniformly on [0, t_c]; the last sample is t_c exactly.
template <class Motion>
Trajectory sample_motion(const Motion& motion, double t_c, std::size_t n_samples) {
  if (n_samples < 2) throw std::invalid_argument("n_samples must be at least 2");
  Trajectory traj;
  traj.reserve(n_samples);
  traj.Fdot.reserve(n_samples);
  const double dt = t_c / static_cast<double>(n_samples - 1);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double t = (i + 1 == n_samples) ? t_c : static_cast<double>(i) * dt;
    const MotionSample s = motion(t);
    traj.push_back(t, s.x, s.xdot, s.xddot, s.F, s.dF);
  }
  return traj;
}

/// Metrics of an analytic motion whose contact ends at t_c.
///
/// t_m is the root of xdot, t_M the first root of dF (or 0 when the force
/// already decreases at impact). `grid` is used to bracket those roots.
template <class Motion>
ImpactMetrics extract_metrics(const Motion& motion, double t_c, double v0,
                              const numerics::ScanGrid& grid) {
  ImpactMetrics out;
  out.t_c = t_c;
  const MotionSample end = motion(t_c);
  out.e_star = -end.xdot / v0;

  auto vel = [&](double t) { return motion(t).xdot; };
  auto acc = [&](double t) { return motion(t).xddot; };
  const auto t_m = numerics::first_downcrossing(vel, acc, 0.0, t_c, grid);
  if (!t_m) throw std::runtime_error("extract_metrics: velocity does not vanish before t_c");
  const MotionSample at_m = motion(*t_m);
  out.t_m = *t_m;
  out.x_m = at_m.x;
  out.F_m = at_m.F;

  const MotionSample start = motion(0.0);
  if (start.dF <= 0.0) {
    out.t_M = 0.0;
    out.F_M = start.F;
    out.x_M = start.x;
  } else {
    // d2F/dt2 by central difference only steers the dip test inside the scan.
    const double h = 1e-3 * grid.fine;
    auto rate = [&](double t) { return motion(t).dF; };
    auto rate_slope = [&](double t) { return (motion(t + h).dF - motion(t - h).dF) / (2.0 * h); };
    const auto t_M = numerics::first_downcrossing(rate, rate_slope, 0.0, t_c, grid);
    if (!t_M) throw std::runtime_error("extract_metrics: force has no interior maximum");
    const MotionSample at_M = motion(*t_M);
    out.t_M = *t_M;
    out.F_M = at_M.F;
    out.x_M = at_M.x;
  }
  return out;
}

template <class Motion>
ImpactMetrics extract_metrics(const Motion& motion, double t_c, double v0, double scan_step) {
  return extract_metrics(motion, t_c, v0, numerics::ScanGrid::uniform(scan_step));
}

}  // namespace visco
