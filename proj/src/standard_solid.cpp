#include "visco/standard_solid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "visco/errors.hpp"
#include "visco/maxwell.hpp"
#include "visco/numerics.hpp"

namespace visco {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kScanFraction = 1.0 / 512.0;
constexpr double kScanRelaxFraction = 0.25;
constexpr double kTransientSpan = 16.0;

/// Cells of kScanRelaxFraction transient times over the first kTransientSpan
/// transient times tau_R / lambda1, then kScanFraction of the period.
numerics::ScanGrid scan_grid(const StandardSolidMotion& motion) {
  const double coarse = kScanFraction * motion.period();
  const double transient = motion.groups().tau_R / motion.roots().lambda1;
  const double fine = std::min(coarse, kScanRelaxFraction * transient);
  return {fine, kTransientSpan * transient, coarse};
}

}  // namespace

double sls_discriminant(double Lambda, double rho) {
  return 4.0 * Lambda * (Lambda * Lambda + rho) -
         Lambda * Lambda * (1.0 + 18.0 * rho - 27.0 * rho * rho);
}

CubicRoots sls_characteristic_roots(double Lambda, double rho) {
  if (!(Lambda > 0.0) || !std::isfinite(Lambda)) {
    throw DomainError("Lambda must be positive, got " + std::to_string(Lambda));
  }
  if (!(rho > 0.0) || !(rho < 1.0)) {
    throw DomainError("rho must lie in (0, 1), got " + std::to_string(rho));
  }
  CubicRoots r;
  r.D = sls_discriminant(Lambda, rho);
  if (!(r.D > 0.0)) {
    throw DiscriminantError("characteristic cubic has no complex pair (D = " +
                                std::to_string(r.D) + ")",
                            r.D);
  }
  const double p = 1.0 - 3.0 * Lambda;
  const double q = 2.0 - 9.0 * Lambda + 27.0 * Lambda * rho;
  // 27 D = Q1^2 > 0; C is the larger cube root of (q +- Q1)/2 and p/C the other.
  const double Q1 = std::sqrt(q * q - 4.0 * p * p * p);
  const double C = std::cbrt(0.5 * (q + std::copysign(Q1, q)));
  const double w = p / C;
  double l = (1.0 + C + w) / 3.0;
  // One Newton step on -l^3 + l^2 - Lambda l + Lambda rho = 0; the complex
  // pair then follows from Vieta's relations.
  l -= (((-l + 1.0) * l - Lambda) * l + Lambda * rho) / ((-3.0 * l + 2.0) * l - Lambda);
  r.lambda1 = l;
  r.beta1 = Lambda * (l - rho) / (2.0 * l * l);
  const double modulus2 = Lambda * rho / l;
  r.zeta1 = std::sqrt(std::max(modulus2 - r.beta1 * r.beta1, 0.0));
  if (!(r.zeta1 > 0.0)) r.zeta1 = std::abs(std::numbers::sqrt3 * (C - w) / 6.0);
  return r;
}

StandardSolidMotion::StandardSolidMotion(const StandardSolidParams& p)
    : p_(p), groups_(derive_sls(p)), roots_(sls_characteristic_roots(groups_.Lambda, groups_.rho)) {
  const double l = roots_.lambda1;
  const double b = roots_.beta1;
  const double z = roots_.zeta1;
  const double den = (b - l) * (b - l) + z * z;
  d_[0].s = ((1.0 - b) * (l - b) + z * z) / (z * den);
  d_[0].c = -2.0 * b / den;
  d_[0].e = 2.0 * b / den;
  for (int k = 1; k < 4; ++k) {
    d_[k].s = -b * d_[k - 1].s - z * d_[k - 1].c;
    d_[k].c = -b * d_[k - 1].c + z * d_[k - 1].s;
    d_[k].e = -l * d_[k - 1].e;
  }
}

double StandardSolidMotion::period() const noexcept {
  return 2.0 * kPi * groups_.tau_R / roots_.zeta1;
}

MotionSample StandardSolidMotion::operator()(double t) const {
  const double tau_R = groups_.tau_R;
  const double s = t / tau_R;
  const double damp = std::exp(-roots_.beta1 * s);
  const double relax = std::exp(-roots_.lambda1 * s);
  const double sn = std::sin(roots_.zeta1 * s);
  const double cs = std::cos(roots_.zeta1 * s);
  auto eval = [&](const Coeffs& c) { return damp * (c.s * sn + c.c * cs) + c.e * relax; };
  MotionSample out;
  out.x = tau_R * p_.v0 * eval(d_[0]);
  out.xdot = p_.v0 * eval(d_[1]);
  out.xddot = p_.v0 / tau_R * eval(d_[2]);
  out.F = -p_.m * out.xddot;
  out.dF = -p_.m * p_.v0 / (tau_R * tau_R) * eval(d_[3]);
  return out;
}

double sls_contact_end(const StandardSolidParams& p) {
  const StandardSolidMotion motion(p);
  auto force = [&](double t) { return motion(t).F; };
  auto rate = [&](double t) { return motion(t).dF; };
  const auto t_c = numerics::first_downcrossing(force, rate, 0.0,
                                                kPlasticHorizonPeriods * motion.period(),
                                                scan_grid(motion));
  if (!t_c) {
    throw NoSeparationError("standard-solid impact: contact force stays positive for " +
                            std::to_string(kPlasticHorizonPeriods) + " oscillation periods");
  }
  return *t_c;
}

Trajectory sls_trajectory(const StandardSolidParams& p, std::size_t n_samples) {
  const double t_c = sls_contact_end(p);
  return sample_motion(StandardSolidMotion(p), t_c, n_samples);
}

ImpactMetrics sls_metrics(const StandardSolidParams& p) {
  const double t_c = sls_contact_end(p);
  const StandardSolidMotion motion(p);
  return extract_metrics(motion, t_c, p.v0, scan_grid(motion));
}

StandardSolidRun sls_simulate(const StandardSolidParams& p, std::size_t n_samples,
                              const OracleOptions& oracle_options) {
  const DerivedGroups d = derive_sls(p);
  StandardSolidRun run;
  run.discriminant = sls_discriminant(d.Lambda, d.rho);
  if (run.discriminant > 0.0) {
    run.trajectory = sls_trajectory(p, n_samples);
    run.metrics = sls_metrics(p);
    return run;
  }
  const RelaxationKernel kernel = RelaxationKernel::standard_solid(d.k0, d.k_inf, d.tau_R);
  OracleRun oracle = integrate_impact(kernel, p.m, p.v0, oracle_options);
  run.trajectory = std::move(oracle.trajectory);
  run.metrics = oracle.metrics;
  run.used_oracle = true;
  return run;
}

PerturbationEstimate sls_perturb_kv(double eta, double rho) {
  const double s = std::sqrt(1.0 - eta * eta);
  const double phase = std::atan2(s, eta) / s;
  PerturbationEstimate out;
  out.tc_scaled = kv_tc_scaled(eta) + rho * (4.0 * eta - 8.0 * eta * eta * phase);
  out.e_star = kv_restitution(eta) * (1.0 + 4.0 * rho * eta * phase);
  return out;
}

PerturbationEstimate sls_perturb_maxwell(double zeta, double rho) {
  const double s = std::sqrt(1.0 - zeta * zeta);
  const double s3 = s * s * s;
  const double e0 = mx_restitution(zeta);
  PerturbationEstimate out;
  out.tc_scaled = mx_tc_scaled(zeta) + 2.0 * kPi * rho * zeta * zeta / s3;
  out.e_star = e0 + 4.0 * rho * zeta * zeta * (1.0 + (1.0 - kPi * zeta / (2.0 * s3)) * e0);
  return out;
}

StandardSolidParams sls_params_from_kv(double eta, double rho, double m, double k_inf,
                                       double v0) {
  if (!(rho > 0.0) || !(rho < 1.0)) {
    throw DomainError("rho must lie in (0, 1), got " + std::to_string(rho));
  }
  if (!(eta > 0.0)) throw DomainError("eta must be positive, got " + std::to_string(eta));
  StandardSolidParams p;
  p.m = m;
  p.v0 = v0;
  p.k1 = k_inf / rho;
  p.k2 = k_inf / (1.0 - rho);
  p.b = 2.0 * eta * std::sqrt(k_inf * m);
  return p;
}

StandardSolidParams sls_params_from_maxwell(double zeta, double rho, double m, double k0,
                                            double v0) {
  if (!(rho > 0.0) || !(rho < 1.0)) {
    throw DomainError("rho must lie in (0, 1), got " + std::to_string(rho));
  }
  if (!(zeta > 0.0)) throw DomainError("zeta must be positive, got " + std::to_string(zeta));
  StandardSolidParams p;
  p.m = m;
  p.v0 = v0;
  p.k1 = k0;
  p.k2 = rho * k0 / (1.0 - rho);
  p.b = k0 / (2.0 * zeta * std::sqrt(k0 / m));
  return p;
}

double sls_kv_omega0(const StandardSolidParams& p) {
  return std::sqrt(derive_sls(p).k_inf / p.m);
}

double sls_maxwell_omega0(const StandardSolidParams& p) { return std::sqrt(p.k1 / p.m); }

}  // namespace visco
