#include "visco/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "visco/analysis.hpp"
#include "visco/kelvin_voigt.hpp"
#include "visco/maxwell.hpp"
#include "visco/standard_solid.hpp"

namespace visco {

namespace {

constexpr double kOracleTolerance = 1e-6;
constexpr double kIdentityTolerance = 1e-12;
constexpr double kInvarianceTolerance = 1e-8;
constexpr double kEnergyTolerance = 1e-8;
constexpr double kOrderTarget = 16.0;
constexpr double kOrderBand = 4.0;

std::vector<double> damping_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 19; ++i) g.push_back(0.05 * i);
  return g;
}

SuiteResult finish(std::string name, double err, double tol, std::string detail = {}) {
  return {std::move(name), err, tol, err <= tol, std::move(detail)};
}

SuiteResult kv_suite(const VerifyOptions& opt) {
  double err = 0.0;
  for (const double eta : damping_grid()) {
    const KelvinVoigtParams p{1.0, 1.0, 2.0 * eta, 1.0, 0.0};
    const ImpactMetrics a = kv_metrics(p);
    const OracleRun o = integrate_impact(RelaxationKernel::kv_limit(p.k, p.b), p.m, p.v0);
    err = std::max({err, std::abs(a.e_star * opt.restitution_fault - o.metrics.e_star),
                    std::abs(a.t_c - o.metrics.t_c)});
  }
  return finish("kelvin_voigt_vs_oracle", err, kOracleTolerance, "eta = 0.05..0.95");
}

SuiteResult maxwell_suite(const VerifyOptions& opt) {
  double err = 0.0;
  for (const double zeta : damping_grid()) {
    const MaxwellParams p{1.0, 1.0, 1.0 / (2.0 * zeta), 1.0, 0.0};
    const ImpactMetrics a = mx_metrics(p);
    const OracleRun o = integrate_impact(RelaxationKernel::maxwell(p.k, p.b), p.m, p.v0);
    err = std::max({err, std::abs(a.e_star * opt.restitution_fault - o.metrics.e_star),
                    std::abs(a.t_c - o.metrics.t_c)});
  }
  return finish("maxwell_vs_oracle", err, kOracleTolerance, "zeta = 0.05..0.95");
}

SuiteResult sls_suite(const VerifyOptions& opt) {
  double err = 0.0;
  int count = 0;
  for (const double Lambda : {0.1, 0.25, 1.0, 4.0}) {
    for (const double rho : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      if (!(sls_discriminant(Lambda, rho) > 0.0)) continue;
      StandardSolidParams p;
      p.k2 = rho / (1.0 - rho);
      p.b = std::sqrt(Lambda) * (p.k1 + p.k2);
      const DerivedGroups d = derive_sls(p);
      const ImpactMetrics a = sls_metrics(p);
      const OracleRun o = integrate_impact(
          RelaxationKernel::standard_solid(d.k0, d.k_inf, d.tau_R), p.m, p.v0);
      err = std::max({err, std::abs(a.e_star * opt.restitution_fault - o.metrics.e_star),
                      d.omega0 * std::abs(a.t_c - o.metrics.t_c)});
      ++count;
    }
  }
  return finish("standard_solid_vs_oracle", err, kOracleTolerance,
                std::to_string(count) + " (Lambda, rho) samples with D > 0");
}

SuiteResult kv_half_suite() {
  double err = 0.0;
  for (int i = 1; i <= 50; ++i) {
    const double eta = 0.99 * i / 51.0;
    const ImpactMetrics a = kv_metrics({1.0, 1.0, 2.0 * eta, 1.0, 0.0});
    err = std::max(err, std::abs(a.t_m / (0.5 * a.t_c) - 1.0));
  }
  return finish("kelvin_voigt_tm_half_tc", err, kIdentityTolerance, "50 eta in (0, 0.99)");
}

SuiteResult maxwell_tc_suite() {
  double err = 0.0;
  for (int i = 1; i <= 50; ++i) {
    const double zeta = 0.99 * i / 51.0;
    const MaxwellParams p{1.0, 1.0, 1.0 / (2.0 * zeta), 1.0, 0.0};
    const ImpactMetrics a = mx_metrics(p);
    const double F_end = MaxwellMotion(p, 0.0)(a.t_c).F;
    err = std::max(err, std::abs(F_end) / a.F_M);
  }
  return finish("maxwell_force_at_tc", err, kIdentityTolerance, "|F(t_c)| / F_M, 50 zeta");
}

SuiteResult invariance_suite() {
  const RelaxationKernel kernel = RelaxationKernel::maxwell(1.0, 1.0 / 0.6);
  const InvarianceReport r = restitution_invariance_probe(kernel, 1.0, {0.5, 1.0, 2.0});
  const double err = std::max({r.max_de_star, r.max_dtc_scaled, r.max_xm_linearity,
                               r.max_fm_linearity});
  return finish("velocity_invariance", err, kInvarianceTolerance, "v0 = 0.5, 1, 2");
}

SuiteResult energy_suite(const VerifyOptions& opt) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> loss(0.05, 0.9);
  std::uniform_real_distribution<double> scale(0.5, 2.0);
  double err = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double m = scale(rng);
    const double k = scale(rng);
    const double v0 = scale(rng);
    const double l = loss(rng);
    double e = 0.0;
    OracleRun o;
    if (i % 2 == 0) {
      const KelvinVoigtParams p{m, k, 2.0 * l * std::sqrt(k * m), v0, 0.0};
      e = kv_metrics(p).e_star;
      o = integrate_impact(RelaxationKernel::kv_limit(p.k, p.b), m, v0);
    } else {
      const MaxwellParams p{m, k, k / (2.0 * l * std::sqrt(k / m)), v0, 0.0};
      e = mx_metrics(p).e_star;
      o = integrate_impact(RelaxationKernel::maxwell(p.k, p.b), m, v0);
    }
    const double v_end = o.trajectory.xdot.back();
    const double loss_fraction = 1.0 - (v_end * v_end) / (v0 * v0);
    const double e_used = std::min(1.0, e * opt.restitution_fault);
    err = std::max(err, std::abs(energy_dissipation(e_used) - loss_fraction));
  }
  return finish("energy_identity", err, kEnergyTolerance, "20 random parameter sets");
}

SuiteResult order_suite() {
  const RelaxationKernel kernel = RelaxationKernel::maxwell(1.0, 1.0 / 0.6);
  const double contact = std::numbers::pi / std::sqrt(kernel.alpha(1.0));
  double tc_ratio = 0.0;
  const double ratio = oracle_step_ratio(kernel, 1.0, 1.0, 0.02 * contact, &tc_ratio);
  const double err = std::abs(ratio - kOrderTarget);
  std::ostringstream d;
  d << "step-halving ratio e_*: " << ratio << " (t_c, not gated: " << tc_ratio << ")";
  return finish("oracle_fourth_order", err, kOrderBand, d.str());
}

SuiteResult vieta_suite() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> L(0.01, 10.0);
  std::uniform_real_distribution<double> R(0.01, 0.99);
  double err = 0.0;
  int n = 0;
  while (n < 1000) {
    const double Lambda = L(rng);
    const double rho = R(rng);
    if (!(sls_discriminant(Lambda, rho) > 0.0)) continue;
    const CubicRoots r = sls_characteristic_roots(Lambda, rho);
    const double q = r.beta1 * r.beta1 + r.zeta1 * r.zeta1;
    err = std::max({err, std::abs(r.lambda1 + 2.0 * r.beta1 - 1.0),
                    std::abs(2.0 * r.beta1 * r.lambda1 + q - Lambda) / Lambda,
                    std::abs(r.lambda1 * q - Lambda * rho) / (Lambda * rho)});
    ++n;
  }
  return finish("cubic_roots_vieta", err, 1e-10, "1000 random (Lambda, rho) with D > 0");
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const auto& s) { return s.passed; });
}

double oracle_step_ratio(const RelaxationKernel& kernel, double m, double v0, double dt_scaled,
                         double* tc) {
  OracleOptions o;
  double e[3];
  double t[3];
  for (int i = 0; i < 3; ++i) {
    o.dt_scaled = dt_scaled / static_cast<double>(1 << i);
    const OracleRun run = integrate_impact(kernel, m, v0, o);
    e[i] = run.metrics.e_star;
    t[i] = run.tau_c;
  }
  if (tc) *tc = (t[0] - t[1]) / (t[1] - t[2]);
  return (e[0] - e[1]) / (e[1] - e[2]);
}

VerifyReport run_verification(const VerifyOptions& options) {
  VerifyReport rep;
  rep.suites.push_back(kv_suite(options));
  rep.suites.push_back(maxwell_suite(options));
  rep.suites.push_back(sls_suite(options));
  rep.suites.push_back(kv_half_suite());
  rep.suites.push_back(maxwell_tc_suite());
  rep.suites.push_back(invariance_suite());
  rep.suites.push_back(energy_suite(options));
  rep.suites.push_back(order_suite());
  rep.suites.push_back(vieta_suite());
  return rep;
}

void write_verify_report(std::ostream& out, const VerifyReport& report) {
  nlohmann::json j;
  j["passed"] = report.passed();
  j["suites"] = nlohmann::json::array();
  for (const SuiteResult& s : report.suites) {
    j["suites"].push_back({{"name", s.name},
                           {"max_error", s.max_error},
                           {"tolerance", s.tolerance},
                           {"passed", s.passed},
                           {"detail", s.detail}});
  }
  out << j.dump(2) << '\n';
}

}  // namespace visco
