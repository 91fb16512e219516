#include "visco/kelvin_voigt.hpp"

#include <cmath>
#include <numbers>

#include "visco/errors.hpp"
#include "visco/numerics.hpp"

namespace visco {

namespace {

constexpr double kPi = std::numbers::pi;

// Grid used to bracket roots, as a fraction of the damped period.
constexpr double kScanFraction = 1.0 / 512.0;

double damped_period(const DerivedGroups& d) { return 2.0 * kPi / d.omega; }

void check_eta(double eta) {
  if (!(eta >= 0.0) || !(eta < 1.0)) {
    throw DomainError("loss factor eta must lie in [0, 1), got " + std::to_string(eta));
  }
}

}  // namespace

KelvinVoigtMotion::KelvinVoigtMotion(const KelvinVoigtParams& p, double g)
    : p_(p), groups_(derive_kv(p)), g_(g) {}

MotionSample KelvinVoigtMotion::operator()(double t) const {
  const double beta = groups_.beta;
  const double w = groups_.omega;
  const double w0sq = groups_.omega0 * groups_.omega0;
  const double decay = std::exp(-beta * t);
  const double c = std::cos(w * t);
  const double s = std::sin(w * t);
  const double sin_coeff = (g_ - beta * p_.v0) / w;

  MotionSample out;
  out.x = g_ / w0sq * (1.0 - decay * c) + (p_.v0 - g_ * beta / w0sq) / w * decay * s;
  out.xdot = decay * (p_.v0 * c + sin_coeff * s);
  out.xddot = decay * ((sin_coeff * w - beta * p_.v0) * c - (p_.v0 * w + beta * sin_coeff) * s);
  out.F = p_.k * out.x + p_.b * out.xdot;
  out.dF = p_.k * out.xdot + p_.b * out.xddot;
  return out;
}

double kv_tc_scaled(double eta) {
  check_eta(eta);
  const double s = std::sqrt(1.0 - eta * eta);
  return 2.0 / s * std::atan2(s, eta);
}

double kv_restitution(double eta) {
  check_eta(eta);
  const double s = std::sqrt(1.0 - eta * eta);
  return std::exp(-2.0 * eta / s * std::atan2(s, eta));
}

double kv_peak_force_scaled(double eta) {
  check_eta(eta);
  if (eta >= 0.5) return 2.0 * eta;
  const double s = std::sqrt(1.0 - eta * eta);
  const double e2 = eta * eta;
  return std::exp(-eta / s * std::atan2(s * (1.0 - 4.0 * e2), eta * (3.0 - 4.0 * e2)));
}

Trajectory kv_trajectory(const KelvinVoigtParams& p, std::size_t n_samples) {
  const KelvinVoigtMotion motion(p, 0.0);
  return sample_motion(motion, kv_metrics(p).t_c, n_samples);
}

ImpactMetrics kv_metrics(const KelvinVoigtParams& p) {
  const DerivedGroups d = derive_kv(p);
  const double eta = d.eta;
  const double s = std::sqrt(1.0 - eta * eta);
  const double w0 = d.omega0;

  ImpactMetrics out;
  out.t_c = kv_tc_scaled(eta) / w0;
  out.e_star = kv_restitution(eta);
  out.t_m = std::asin(s) / (w0 * s);
  out.x_m = p.v0 / w0 * std::exp(-eta / s * std::asin(s));
  out.F_m = p.k * out.x_m;
  if (eta < 0.5) {
    const double e2 = eta * eta;
    out.t_M = std::atan2(s * (1.0 - 4.0 * e2), eta * (3.0 - 4.0 * e2)) / (w0 * s);
  } else {
    out.t_M = 0.0;
  }
  out.F_M = p.m * p.v0 * w0 * kv_peak_force_scaled(eta);
  out.x_M = KelvinVoigtMotion(p, 0.0)(out.t_M).x;
  return out;
}

double kv_fm_minimizer() {
  return numerics::golden_section_min(kv_peak_force_scaled, 1e-9, 1.0 - 1e-9, 1e-10);
}

double kv_drop_contact_end(const KelvinVoigtParams& p) {
  const KelvinVoigtMotion motion(p, p.g);
  const double period = damped_period(motion.groups());
  auto force = [&](double t) { return motion(t).F; };
  auto rate = [&](double t) { return motion(t).dF; };
  const auto t_c = numerics::first_downcrossing(force, rate, 0.0, kPlasticHorizonPeriods * period,
                                                kScanFraction * period);
  if (!t_c) {
    throw PlasticImpactError("Kelvin-Voigt drop impact: contact force stays positive for " +
                             std::to_string(kPlasticHorizonPeriods) +
                             " damped periods (eps0 = " +
                             std::to_string(motion.groups().eps0) + ")");
  }
  return *t_c;
}

Trajectory kv_drop_trajectory(const KelvinVoigtParams& p, std::size_t n_samples) {
  const double t_c = kv_drop_contact_end(p);
  return sample_motion(KelvinVoigtMotion(p, p.g), t_c, n_samples);
}

ImpactMetrics kv_drop_metrics(const KelvinVoigtParams& p) {
  const double t_c = kv_drop_contact_end(p);
  const KelvinVoigtMotion motion(p, p.g);
  return extract_metrics(motion, t_c, p.v0, kScanFraction * damped_period(motion.groups()));
}

ImpactMetrics kv_drop_metrics_asymptotic(const KelvinVoigtParams& p) {
  const DerivedGroups d = derive_kv(p);
  const double tc0 = kv_tc_scaled(d.eta) / d.omega0;
  const double e0 = kv_restitution(d.eta);
  ImpactMetrics out;
  out.t_c = tc0 + d.eps0 * (1.0 + e0) / (e0 * d.omega0);
  out.e_star = e0 * (1.0 - 2.0 * d.eps0 * d.eta);
  out.t_m = out.x_m = out.t_M = out.F_M = kNaN;
  return out;
}

double kv_find_critical_eps0(double eta, double tol) {
  if (!(eta > 0.0) || !(eta < 1.0)) {
    throw DomainError("critical eps0 needs eta in (0, 1), got " + std::to_string(eta));
  }
  // Unit mass, stiffness and velocity: omega0 = 1, so g equals eps0.
  auto plastic = [eta](double eps0) {
    const KelvinVoigtParams p{1.0, 1.0, 2.0 * eta, 1.0, eps0};
    try {
      kv_drop_contact_end(p);
      return false;
    } catch (const PlasticImpactError&) {
      return true;
    }
  };
  double lo = 0.0;
  double hi = 1.0;
  while (!plastic(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw std::runtime_error("kv_find_critical_eps0: no plastic regime found");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (plastic(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace visco
