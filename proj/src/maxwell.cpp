#include "visco/maxwell.hpp"

#include <cmath>
#include <numbers>

#include "visco/errors.hpp"
#include "visco/numerics.hpp"

namespace visco {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kScanFraction = 1.0 / 512.0;

void check_zeta(double zeta) {
  if (!(zeta >= 0.0) || !(zeta < 1.0)) {
    throw DomainError("loss factor zeta must lie in [0, 1), got " + std::to_string(zeta));
  }
}

}  // namespace

MaxwellMotion::MaxwellMotion(const MaxwellParams& p, double g)
    : p_(p), groups_(derive_maxwell(p)), g_(g) {
  const double w0 = groups_.omega0;
  const double w = groups_.omega;
  decay_ = groups_.zeta * w0;
  drift_ = 2.0 * groups_.zeta * g / w0;
  // Velocity u solves u'' + 2 zeta w0 u' + w0^2 u = 2 zeta w0 g, u(0)=v0, u'(0)=g.
  vel_cos_ = p.v0 - drift_;
  vel_sin_ = (g + decay_ * vel_cos_) / w;
  acc_sin_ = -decay_ * vel_sin_ - w * vel_cos_;
  const double w0sq = w0 * w0;
  disp_cos_ = -(decay_ * vel_cos_ + w * vel_sin_) / w0sq;
  disp_sin_ = (w * vel_cos_ - decay_ * vel_sin_) / w0sq;
}

MotionSample MaxwellMotion::operator()(double t) const {
  const double w = groups_.omega;
  const double e = std::exp(-decay_ * t);
  const double c = std::cos(w * t);
  const double s = std::sin(w * t);
  MotionSample out;
  out.x = e * (disp_cos_ * c + disp_sin_ * s) - disp_cos_ + drift_ * t;
  out.xdot = e * (vel_cos_ * c + vel_sin_ * s) + drift_;
  // F = m (g - x''); the cosine term cancels g exactly at t = 0.
  out.F = p_.m * (g_ * (1.0 - e * c) - e * acc_sin_ * s);
  out.xddot = g_ - out.F / p_.m;
  out.dF = std::isinf(p_.b) ? p_.k * out.xdot : p_.k * (out.xdot - out.F / p_.b);
  return out;
}

double mx_tc_scaled(double zeta) {
  check_zeta(zeta);
  return kPi / std::sqrt(1.0 - zeta * zeta);
}

double mx_restitution(double zeta) {
  check_zeta(zeta);
  return std::exp(-kPi * zeta / std::sqrt(1.0 - zeta * zeta));
}

Trajectory mx_trajectory(const MaxwellParams& p, std::size_t n_samples) {
  const MaxwellMotion motion(p, 0.0);
  return sample_motion(motion, kPi / motion.groups().omega, n_samples);
}

ImpactMetrics mx_metrics(const MaxwellParams& p) {
  const DerivedGroups d = derive_maxwell(p);
  const double zeta = d.zeta;
  const double s = std::sqrt(1.0 - zeta * zeta);
  const double w0 = d.omega0;
  const double scale_x = p.v0 / w0;
  const double scale_F = p.k * p.v0 / w0;
  const double phase_m = 1.0 + 2.0 / kPi * std::asin(zeta);
  const double decay_m = std::exp(-kPi * zeta / (2.0 * s) * phase_m);
  const double decay_M = std::exp(-zeta / s * std::atan2(s, zeta));

  ImpactMetrics out;
  out.t_c = kPi / d.omega;
  out.e_star = mx_restitution(zeta);
  out.t_m = kPi / (2.0 * d.omega) * phase_m;
  out.x_m = scale_x * (2.0 * zeta + decay_m);
  out.F_m = scale_F * decay_m;
  out.t_M = std::atan2(s, zeta) / d.omega;
  out.F_M = scale_F * decay_M;
  out.x_M = scale_x * (2.0 * zeta + (1.0 - 4.0 * zeta * zeta) * decay_M);
  return out;
}

double mx_drop_contact_end(const MaxwellParams& p) {
  const MaxwellMotion motion(p, p.g);
  const double period = 2.0 * kPi / motion.groups().omega;
  auto force = [&](double t) { return motion(t).F; };
  auto rate = [&](double t) { return motion(t).dF; };
  const auto t_c = numerics::first_downcrossing(force, rate, 0.0, kPlasticHorizonPeriods * period,
                                                kScanFraction * period);
  if (!t_c) {
    throw PlasticImpactError("Maxwell drop impact: contact force stays positive for " +
                             std::to_string(kPlasticHorizonPeriods) +
                             " damped periods (eps0 = " +
                             std::to_string(motion.groups().eps0) + ")");
  }
  return *t_c;
}

Trajectory mx_drop_trajectory(const MaxwellParams& p, std::size_t n_samples) {
  const double t_c = mx_drop_contact_end(p);
  return sample_motion(MaxwellMotion(p, p.g), t_c, n_samples);
}

ImpactMetrics mx_drop_metrics(const MaxwellParams& p) {
  const double t_c = mx_drop_contact_end(p);
  const MaxwellMotion motion(p, p.g);
  return extract_metrics(motion, t_c, p.v0, kScanFraction * 2.0 * kPi / motion.groups().omega);
}

ImpactMetrics mx_drop_metrics_asymptotic(const MaxwellParams& p) {
  const DerivedGroups d = derive_maxwell(p);
  const double tc0 = mx_tc_scaled(d.zeta) / d.omega0;
  const double e0 = mx_restitution(d.zeta);
  ImpactMetrics out;
  out.t_c = tc0 + d.eps0 * (1.0 + e0) / (e0 * d.omega0);
  out.e_star = e0 - 2.0 * d.zeta * d.eps0 * (1.0 + e0);
  out.t_m = out.x_m = out.t_M = out.F_M = kNaN;
  return out;
}

}  // namespace visco
