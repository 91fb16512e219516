#include "visco/models.hpp"

#include <cmath>
#include <string>

#include "visco/errors.hpp"

namespace visco {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) {
    throw DomainError(std::string(name) + " must be positive, got " + std::to_string(v));
  }
}

void require_non_negative(double v, const char* name) {
  if (!(v >= 0.0)) {
    throw DomainError(std::string(name) + " must be non-negative, got " + std::to_string(v));
  }
}

}  // namespace

DerivedGroups derive_kv(const KelvinVoigtParams& p) {
  require_positive(p.m, "m");
  require_positive(p.k, "k");
  require_non_negative(p.b, "b");
  require_positive(p.v0, "v0");
  require_non_negative(p.g, "g");
  if (!std::isfinite(p.b)) throw DomainError("b must be finite for the Kelvin-Voigt model");

  DerivedGroups d;
  d.omega0 = std::sqrt(p.k / p.m);
  d.beta = p.b / (2.0 * p.m);
  d.eta = d.beta / d.omega0;
  if (d.eta >= 1.0) {
    throw DomainError("Kelvin-Voigt loss factor eta = " + std::to_string(d.eta) +
                      " >= 1 (overdamped)");
  }
  d.omega = d.omega0 * std::sqrt(1.0 - d.eta * d.eta);
  d.eps0 = p.g / (d.omega0 * p.v0);
  d.k0 = p.k;
  d.k_inf = p.k;
  return d;
}

DerivedGroups derive_maxwell(const MaxwellParams& p) {
  require_positive(p.m, "m");
  require_positive(p.k, "k");
  require_positive(p.b, "b");
  require_positive(p.v0, "v0");
  require_non_negative(p.g, "g");

  DerivedGroups d;
  d.omega0 = std::sqrt(p.k / p.m);
  d.zeta = p.k / (2.0 * d.omega0 * p.b);  // b = +inf gives zeta = 0
  if (d.zeta >= 1.0) {
    throw DomainError("Maxwell loss factor zeta = " + std::to_string(d.zeta) +
                      " >= 1 (overdamped)");
  }
  d.omega = d.omega0 * std::sqrt(1.0 - d.zeta * d.zeta);
  d.tau_R = p.b / p.k;
  d.eps0 = p.g / (d.omega0 * p.v0);
  d.k0 = p.k;
  d.k_inf = 0.0;
  d.rho = 0.0;
  d.Lambda = 1.0 / (4.0 * d.zeta * d.zeta);
  return d;
}

DerivedGroups derive_sls(const StandardSolidParams& p) {
  require_positive(p.m, "m");
  require_positive(p.k1, "k1");
  require_positive(p.k2, "k2");
  require_positive(p.b, "b");
  require_positive(p.v0, "v0");

  DerivedGroups d;
  d.k0 = p.k1;
  d.k_inf = p.k1 * p.k2 / (p.k1 + p.k2);
  d.rho = p.k2 / (p.k1 + p.k2);
  d.tau_R = p.b / (p.k1 + p.k2);
  d.Lambda = d.k0 / p.m * d.tau_R * d.tau_R;
  d.omega0 = std::sqrt(d.k0 / p.m);
  d.eps0 = 0.0;
  return d;
}

StandardSolidParams convert_configurations(const StandardSolidMaxwellForm& f) {
  require_positive(f.kappa1, "kappa1");
  require_positive(f.kappa2, "kappa2");
  require_positive(f.beta_dashpot, "beta_dashpot");
  StandardSolidParams p;
  p.k1 = f.kappa1 + f.kappa2;
  // k1 k2/(k1+k2) = kappa1
  p.k2 = f.kappa1 * p.k1 / f.kappa2;
  // b/(k1+k2) = beta/kappa2
  p.b = (p.k1 + p.k2) * f.beta_dashpot / f.kappa2;
  return p;
}

StandardSolidMaxwellForm invert_configuration(const StandardSolidParams& p) {
  require_positive(p.k1, "k1");
  require_positive(p.k2, "k2");
  require_positive(p.b, "b");
  const double sum = p.k1 + p.k2;
  StandardSolidMaxwellForm f;
  f.kappa1 = p.k1 * p.k2 / sum;
  f.kappa2 = p.k1 * p.k1 / sum;
  f.beta_dashpot = p.b / sum * f.kappa2;
  return f;
}

double relaxation_stiffness(const StandardSolidParams& p, double t) {
  const double k0 = p.k1;
  const double k_inf = p.k1 * p.k2 / (p.k1 + p.k2);
  const double tau_R = p.b / (p.k1 + p.k2);
  return k_inf + (k0 - k_inf) * std::exp(-t / tau_R);
}

double relaxation_stiffness(const StandardSolidMaxwellForm& f, double t) {
  return f.kappa1 + f.kappa2 * std::exp(-t * f.kappa2 / f.beta_dashpot);
}

}  // namespace visco
