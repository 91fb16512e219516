#include <cmath>
#include <random>

#include <doctest.h>

#include "ode_reference.hpp"
#include "visco/errors.hpp"
#include "visco/kelvin_voigt.hpp"
#include "visco/maxwell.hpp"
#include "visco/standard_solid.hpp"

using namespace visco;

namespace {

StandardSolidParams from_groups(double Lambda, double rho) {
  StandardSolidParams p;
  p.k2 = rho / (1.0 - rho);
  p.b = std::sqrt(Lambda) * (p.k1 + p.k2);
  return p;
}

/// Spring k1 in series with (k2 || b). State (x, x', y) with y the stretch of
/// the parallel pair; F = k1 (x - y) = k2 y + b y'.
ref::Event<3> reference_impact(const StandardSolidParams& p) {
  auto f = [&](double, const ref::State<3>& s) {
    const double F = p.k1 * (s[0] - s[2]);
    return ref::State<3>{s[1], -F / p.m, (F - p.k2 * s[2]) / p.b};
  };
  auto g = [&](const ref::State<3>& s) { return p.k1 * (s[0] - s[2]); };
  auto dg = [&](double t, const ref::State<3>& s) {
    const auto d = f(t, s);
    return p.k1 * (d[0] - d[2]);
  };
  return ref::integrate_until<3>(f, g, dg, {0.0, p.v0, 0.0}, 1e-4, 500.0);
}

}  // namespace

TEST_CASE("discriminant and roots at Lambda = 0.25, rho = 0.5") {
  CHECK(sls_discriminant(0.25, 0.5) == doctest::Approx(0.359375).epsilon(1e-14));
  const CubicRoots r = sls_characteristic_roots(0.25, 0.5);
  CHECK(r.lambda1 == doctest::Approx(0.877439).epsilon(1e-6));
  CHECK(r.D == doctest::Approx(0.359375));
}

TEST_CASE("roots satisfy the cubic") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> L(0.01, 20.0), R(0.01, 0.99);
  int n = 0;
  while (n < 500) {
    const double Lambda = L(rng), rho = R(rng);
    if (!(sls_discriminant(Lambda, rho) > 0.0)) continue;
    const CubicRoots r = sls_characteristic_roots(Lambda, rho);
    auto cubic = [&](double z) { return ((z + 1.0) * z + Lambda) * z + Lambda * rho; };
    const double scale = 1.0 + Lambda;
    CHECK(std::abs(cubic(-r.lambda1)) < 1e-11 * scale);
    CHECK(r.lambda1 > 0.0);
    CHECK(r.zeta1 > 0.0);
    // complex root -beta1 + i zeta1
    const double re = -r.beta1, im = r.zeta1;
    const double re2 = re * re - im * im, im2 = 2 * re * im;
    const double re3 = re2 * re - im2 * im, im3 = re2 * im + im2 * re;
    CHECK(std::abs(re3 + re2 + Lambda * re + Lambda * rho) < 1e-10 * scale);
    CHECK(std::abs(im3 + im2 + Lambda * im) < 1e-10 * scale);
    ++n;
  }
}

TEST_CASE("root errors") {
  CHECK_THROWS_AS(sls_characteristic_roots(0.0, 0.5), DomainError);
  CHECK_THROWS_AS(sls_characteristic_roots(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(sls_characteristic_roots(1.0, 0.0), DomainError);
  REQUIRE(sls_discriminant(0.05, 0.01) <= 0.0);
  try {
    sls_characteristic_roots(0.05, 0.01);
    FAIL("expected DiscriminantError");
  } catch (const DiscriminantError& e) {
    CHECK(e.discriminant() == doctest::Approx(sls_discriminant(0.05, 0.01)));
  }
}

TEST_CASE("exact solution against reference integration") {
  for (const auto& [Lambda, rho] : {std::pair{0.25, 0.5}, {1.0, 0.3}, {4.0, 0.1}, {0.1, 0.9}}) {
    CAPTURE(Lambda);
    CAPTURE(rho);
    const StandardSolidParams p = from_groups(Lambda, rho);
    const ImpactMetrics m = sls_metrics(p);
    const auto ev = reference_impact(p);
    CHECK(std::abs(ev.t - m.t_c) < 1e-8);
    CHECK(std::abs(-ev.y[1] - m.e_star) < 1e-8);
    const StandardSolidMotion motion(p);
    CHECK(std::abs(motion(m.t_m).xdot) < 1e-12);
    CHECK(std::abs(motion(m.t_c).F) < 1e-12);
  }
}

TEST_CASE("trajectory is consistent") {
  const StandardSolidParams p = from_groups(1.0, 0.3);
  const Trajectory tr = sls_trajectory(p, 201);
  CHECK(tr.x.front() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(tr.xdot.front() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(tr.F.front() == doctest::Approx(0.0).epsilon(1e-13));
  for (std::size_t i = 0; i < tr.size(); ++i) {
    CHECK(tr.xddot[i] == doctest::Approx(-tr.F[i] / p.m).epsilon(1e-10));
  }
}

TEST_CASE("small rho recovers the limits") {
  const double rho = 1e-7;
  const StandardSolidParams kv = sls_params_from_kv(0.3, rho);
  CHECK(sls_kv_omega0(kv) * sls_metrics(kv).t_c ==
        doctest::Approx(kv_tc_scaled(0.3)).epsilon(1e-6));
  CHECK(sls_metrics(kv).e_star == doctest::Approx(kv_restitution(0.3)).epsilon(1e-6));
  const StandardSolidParams mx = sls_params_from_maxwell(0.3, rho);
  CHECK(sls_maxwell_omega0(mx) * sls_metrics(mx).t_c ==
        doctest::Approx(mx_tc_scaled(0.3)).epsilon(1e-6));
  CHECK(sls_metrics(mx).e_star == doctest::Approx(mx_restitution(0.3)).epsilon(1e-6));
}

TEST_CASE("tiny rho keeps full precision") {
  for (const double rho : {1e-5, 1e-6}) {
    const StandardSolidParams p = sls_params_from_kv(0.3, rho);
    const ImpactMetrics m = sls_metrics(p);
    const PerturbationEstimate est = sls_perturb_kv(0.3, rho);
    CHECK(std::abs(m.e_star / est.e_star - 1.0) < 1e-8);
    CHECK(std::abs(sls_kv_omega0(p) * m.t_c / est.tc_scaled - 1.0) < 1e-8);
  }
}

TEST_CASE("perturbation formulas") {
  CHECK(sls_perturb_kv(0.3, 0.0).tc_scaled == doctest::Approx(kv_tc_scaled(0.3)));
  CHECK(sls_perturb_kv(0.3, 0.0).e_star == doctest::Approx(kv_restitution(0.3)));
  CHECK(sls_perturb_maxwell(0.3, 0.0).tc_scaled == doctest::Approx(mx_tc_scaled(0.3)));
  CHECK(sls_perturb_maxwell(0.3, 0.0).e_star == doctest::Approx(mx_restitution(0.3)));

  auto kv_err = [](double eta, double rho) {
    const StandardSolidParams p = sls_params_from_kv(eta, rho);
    return std::abs(sls_perturb_kv(eta, rho).e_star / sls_metrics(p).e_star - 1.0);
  };
  auto mx_err = [](double zeta, double rho) {
    const StandardSolidParams p = sls_params_from_maxwell(zeta, rho);
    return std::abs(sls_perturb_maxwell(zeta, rho).tc_scaled /
                        (sls_maxwell_omega0(p) * sls_metrics(p).t_c) -
                    1.0);
  };
  const double r_kv = kv_err(0.3, 0.05) / kv_err(0.3, 0.025);
  const double r_mx = mx_err(0.3, 0.05) / mx_err(0.3, 0.025);
  CHECK(r_kv >= 3.5);
  CHECK(r_kv <= 4.5);
  CHECK(r_mx >= 3.5);
  CHECK(r_mx <= 4.5);
  CHECK(kv_err(0.9, 0.1) > kv_err(0.3, 0.1));
}

TEST_CASE("parametrisations") {
  const StandardSolidParams kv = sls_params_from_kv(0.4, 0.2, 2.0, 3.0, 1.5);
  const DerivedGroups d = derive_sls(kv);
  CHECK(d.k_inf == doctest::Approx(3.0));
  CHECK(d.rho == doctest::Approx(0.2));
  CHECK(kv.b / (2.0 * std::sqrt(3.0 * 2.0)) == doctest::Approx(0.4));
  const StandardSolidParams mx = sls_params_from_maxwell(0.4, 0.2, 2.0, 3.0, 1.5);
  const DerivedGroups e = derive_sls(mx);
  CHECK(e.k0 == doctest::Approx(3.0));
  CHECK(e.rho == doctest::Approx(0.2));
  CHECK(sls_maxwell_omega0(mx) == doctest::Approx(std::sqrt(1.5)));
}

TEST_CASE("oracle fallback when D <= 0") {
  const StandardSolidParams p = from_groups(0.05, 0.01);
  const StandardSolidRun run = sls_simulate(p, 100);
  CHECK(run.used_oracle);
  CHECK(run.discriminant <= 0.0);
  CHECK(run.metrics.e_star > 0.0);
  CHECK(run.metrics.e_star < 1.0);
  const auto ev = reference_impact(p);
  CHECK(std::abs(ev.t - run.metrics.t_c) < 1e-6);
  CHECK(std::abs(-ev.y[1] - run.metrics.e_star) < 1e-6);
  CHECK_THROWS_AS(sls_metrics(p), DiscriminantError);

  const StandardSolidRun closed = sls_simulate(from_groups(1.0, 0.3), 100);
  CHECK_FALSE(closed.used_oracle);
  CHECK(closed.trajectory.size() == 100);
}
