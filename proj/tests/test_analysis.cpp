#include <cmath>
#include <numbers>
#include <sstream>

#include <doctest.h>

#include "visco/analysis.hpp"
#include "visco/errors.hpp"
#include "visco/maxwell.hpp"

using namespace visco;

namespace {

constexpr double kPi = std::numbers::pi;

/// Impact against a small sample: k chosen so E_dyn is in the MPa range.
MaxwellParams sample_impact(double v0 = 1.0) { return {0.1, 2e5, 2e5 / (2.0 * 0.3 * std::sqrt(2e6)), v0, 0.0}; }

ExperimentRecord record(double v0, double e, double Emax, double E10, double smax, double emax) {
  ExperimentRecord r;
  r.v0 = v0;
  r.h0 = v0 * v0 / (2.0 * kStandardGravity);
  r.e_star = e;
  r.E_max = Emax;
  r.E_10 = E10;
  r.sigma_max = smax;
  r.eps_max = emax;
  return r;
}

}  // namespace

TEST_CASE("stress and strain") {
  Trajectory tr;
  tr.push_back(0.0, 0.0, 1.0, 0.0, 0.0);
  tr.push_back(1.0, 1e-4, 0.5, 0.0, 19.6);
  const SampleGeometry g;
  const StressStrain ss = stress_strain(tr, g);
  CHECK(ss.eps[1] == doctest::Approx(0.2));
  CHECK(ss.sigma[1] == doctest::Approx(19.6 / (kPi * 2.5e-3 * 2.5e-3)));
}

TEST_CASE("differentiation is fourth order") {
  auto max_error = [](int n) {
    std::vector<double> t(n), y(n);
    for (int i = 0; i < n; ++i) {
      t[i] = 2.0 * i / (n - 1) + 0.05 * std::sin(3.0 * i);  // non-uniform grid
      y[i] = std::sin(t[i]);
    }
    const std::vector<double> d = differentiate(t, y);
    double e = 0.0;
    for (int i = 0; i < n; ++i) e = std::max(e, std::abs(d[i] - std::cos(t[i])));
    return e;
  };
  CHECK(max_error(41) < 1e-5);
  std::vector<double> t = {0.0, 0.1, 0.3, 0.35, 0.6, 1.0};
  std::vector<double> y;
  for (const double x : t) y.push_back(1.0 + x - 2.0 * x * x + x * x * x * x);
  const std::vector<double> d = differentiate(t, y);
  for (std::size_t i = 0; i < t.size(); ++i) {
    CHECK(d[i] == doctest::Approx(1.0 - 4.0 * t[i] + 4.0 * t[i] * t[i] * t[i]).epsilon(1e-9));
  }
  std::vector<double> uni(81), f(81);
  for (int i = 0; i < 81; ++i) {
    uni[i] = i / 80.0;
    f[i] = std::exp(uni[i]);
  }
  std::vector<double> half(41), fh(41);
  for (int i = 0; i < 41; ++i) {
    half[i] = i / 40.0;
    fh[i] = std::exp(half[i]);
  }
  const double e_fine = std::abs(differentiate(uni, f)[40] - std::exp(0.5));
  const double e_coarse = std::abs(differentiate(half, fh)[20] - std::exp(0.5));
  CHECK(e_coarse / e_fine == doctest::Approx(16.0).epsilon(0.2));
}

TEST_CASE("dynamic modulus: analytic rate, finite differences, closed form") {
  const MaxwellParams p = sample_impact();
  const SampleGeometry g;
  const Trajectory tr = mx_trajectory(p, 2001);
  const std::vector<double> E = dynamic_modulus(tr, g);
  Trajectory stripped = tr;
  stripped.Fdot.clear();
  const std::vector<double> Ed = dynamic_modulus(stripped, g);
  int compared = 0;
  for (std::size_t i = 0; i < tr.size(); i += 37) {
    if (std::isnan(E[i])) continue;
    const double t = tr.t[i];
    if (std::abs(tr.xdot[i]) < 1e-2) continue;
    CHECK(E[i] == doctest::Approx(maxwell_dynamic_modulus(p, g, t)).epsilon(1e-9));
    CHECK(Ed[i] == doctest::Approx(E[i]).epsilon(1e-6));
    ++compared;
  }
  CHECK(compared > 30);
  const double h = g.h / (kPi * g.a * g.a);
  CHECK(E[0] == doctest::Approx(h * p.k).epsilon(1e-12));
}

TEST_CASE("dynamic modulus is undefined where the velocity vanishes") {
  const MaxwellParams p = sample_impact();
  const ImpactMetrics m = mx_metrics(p);
  CHECK_THROWS_AS(maxwell_dynamic_modulus(p, SampleGeometry{}, m.t_m), SingularityError);
  Trajectory tr;
  tr.push_back(0.0, 0.0, 1.0, 0.0, 0.0, 1.0);
  tr.push_back(1.0, 0.5, 1e-9, 0.0, 1.0, 1.0);
  CHECK(std::isnan(dynamic_modulus(tr, SampleGeometry{})[1]));
}

TEST_CASE("modulus at reference stress") {
  const MaxwellParams p = sample_impact();
  const SampleGeometry g;
  const ImpactMetrics m = mx_metrics(p);
  const double area = kPi * g.a * g.a;
  const double peak = m.F_M / area;
  const ModulusAtStress at = solve_e10(p, g, 0.5 * peak);
  const double F = MaxwellMotion(p, 0.0)(at.t).F;
  CHECK(F / area == doctest::Approx(0.5 * peak).epsilon(1e-10));
  CHECK(at.t < m.t_M);
  CHECK(at.E == doctest::Approx(maxwell_dynamic_modulus(p, g, at.t)));
  CHECK_THROWS_AS(solve_e10(p, g, 1.01 * peak), NoCrossingError);
  CHECK(solve_e10(p, g, 0.0).E == doctest::Approx(maxwell_dynamic_modulus(p, g, 0.0)));
  CHECK_THROWS_AS(solve_e10(p, g, -1.0), DomainError);
}

TEST_CASE("energy dissipation") {
  CHECK(energy_dissipation(0.6) == doctest::Approx(0.64));
  CHECK(energy_dissipation(1.0) == 0.0);
  CHECK_THROWS_AS(energy_dissipation(1.1), DomainError);
  CHECK_THROWS_AS(energy_dissipation(-0.1), DomainError);
}

TEST_CASE("bundled table") {
  const std::vector<ExperimentRecord> rec = ingest_table(bundled_table_path());
  REQUIRE(rec.size() == 4);
  CHECK(rec[0].h0 == doctest::Approx(0.025));
  CHECK(rec[0].v0 == 0.70);
  CHECK(rec[3].sigma_max == doctest::Approx(40.5e6));
  CHECK(rec[2].E_10_sd == doctest::Approx(12e6));
  for (const auto& r : rec) CHECK(r.v0_consistent);
  const LinearityReport rep = linearity_report(rec);
  CHECK(rep.ratio_increasing);
  REQUIRE(rep.verdicts.size() == 5);
  for (const Verdict& v : rep.verdicts) CHECK_FALSE(v.holds);
  CHECK(rep.stiffness_ratio[0] == doctest::Approx(15.6e6 / 0.48));
}

TEST_CASE("table round trip") {
  const std::vector<ExperimentRecord> rec = ingest_table(bundled_table_path());
  std::stringstream ss;
  write_table(ss, rec);
  const std::vector<ExperimentRecord> back = ingest_table(ss);
  REQUIRE(back.size() == rec.size());
  for (std::size_t i = 0; i < rec.size(); ++i) {
    CHECK(back[i].h0 == rec[i].h0);
    CHECK(back[i].E_max == rec[i].E_max);
    CHECK(back[i].e_star_sd == rec[i].e_star_sd);
    CHECK(back[i].delta_m == rec[i].delta_m);
  }
}

TEST_CASE("table parse errors carry row and column") {
  const std::string header = kExperimentHeader;
  auto fails_with = [](const std::string& text, int row, const std::string& column) {
    std::istringstream in(text);
    try {
      ingest_table(in);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.row() == row);
      CHECK(e.column() == column);
    }
  };
  std::string missing = header;
  missing.replace(missing.find("estar,"), 6, "");
  fails_with(missing + "\n", 1, "estar");
  fails_with(header + "\n25,0.70,86,22,75,13,15.6,2.9,0.48,0.06,x,0.08,2.2\n", 2, "estar");
  fails_with(header + "\n25,0.70,86\n", 2, "Emax_sd");
  std::istringstream empty(header + "\n");
  CHECK_THROWS_AS(ingest_table(empty), ParseError);
  CHECK_THROWS_AS(ingest_table(std::string("/nonexistent/table.csv")), ParseError);
}

TEST_CASE("inconsistent drop height is flagged") {
  std::istringstream in(std::string(kExperimentHeader) +
                        "\n25,0.90,86,22,75,13,15.6,2.9,0.48,0.06,0.64,0.08,2.2\n");
  CHECK_FALSE(ingest_table(in)[0].v0_consistent);
}

TEST_CASE("linear data satisfies every prediction") {
  std::vector<ExperimentRecord> rec;
  for (const double v0 : {1.4, 0.7, 1.0}) {
    rec.push_back(record(v0, 0.5, 100e6, 80e6 + v0 * 1e6, 30e6 * v0, 0.3 * v0));
  }
  const LinearityReport rep = linearity_report(rec);
  CHECK(rep.v0 == std::vector<double>{0.7, 1.0, 1.4});
  for (const Verdict& v : rep.verdicts) CHECK(v.holds);
  CHECK_FALSE(rep.ratio_increasing);
  CHECK_THROWS_AS(linearity_report({rec[0]}), DomainError);
}
