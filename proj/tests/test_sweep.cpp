#include <bit>
#include <cmath>
#include <cstdint>

#include <doctest.h>

#include "visco/errors.hpp"
#include "visco/kelvin_voigt.hpp"
#include "visco/maxwell.hpp"
#include "visco/sweep.hpp"

using namespace visco;

namespace {

SweepSpec spec(const std::string& model, const std::string& text,
               std::map<std::string, double> fixed = {}) {
  SweepSpec s = parse_sweep_spec(text, model);
  s.fixed = std::move(fixed);
  return s;
}

bool same_bits(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

void check_identical(const SweepResult& a, const SweepResult& b) {
  REQUIRE(a.columns == b.columns);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    REQUIRE(a.rows[i].size() == b.rows[i].size());
    for (std::size_t c = 0; c < a.rows[i].size(); ++c) CHECK(same_bits(a.rows[i][c], b.rows[i][c]));
  }
  CHECK(a.notes == b.notes);
  CHECK(a.failures == b.failures);
}

}  // namespace

TEST_CASE("spec parsing") {
  const SweepSpec s = parse_sweep_spec("eta:0.1:0.9:9", "kv");
  CHECK(s.param == "eta");
  CHECK(s.lo == 0.1);
  CHECK(s.hi == 0.9);
  CHECK(s.steps == 9);
  CHECK(sweep_point(s, 0) == 0.1);
  CHECK(sweep_point(s, 8) == 0.9);
  CHECK(sweep_point(s, 4) == doctest::Approx(0.5));
  CHECK_THROWS_AS(parse_sweep_spec("eta:0.1:0.9", "kv"), ConfigError);
  CHECK_THROWS_AS(parse_sweep_spec("eta:a:0.9:3", "kv"), ConfigError);
  CHECK_THROWS_AS(parse_sweep_spec("eta:0.1:0.9:2.5", "kv"), ConfigError);
  CHECK_THROWS_AS(parse_sweep_spec("eta:0.1:0.9:1", "kv"), ConfigError);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(validate_sweep(spec("kv", "zeta:0.1:0.9:3")), ConfigError);
  CHECK_THROWS_AS(validate_sweep(spec("kv", "eps0:0:0.1:3")), ConfigError);
  CHECK_THROWS_AS(validate_sweep(spec("sls", "rho:0.1:0.5:3")), ConfigError);
  CHECK_THROWS_AS(validate_sweep(spec("sls", "rho:0.1:0.5:3", {{"eta", 0.3}, {"zeta", 0.3}})),
                  ConfigError);
  CHECK_THROWS_AS(validate_sweep(spec("sls", "Lambda:0.1:1:3")), ConfigError);
  CHECK_THROWS_AS(validate_sweep(spec("kv", "eta:0.9:0.1:3")), ConfigError);
  CHECK_THROWS_AS(validate_sweep(spec("foam", "eta:0.1:0.9:3")), ConfigError);
  CHECK_NOTHROW(validate_sweep(spec("maxwell", "eps0:0:0.1:3", {{"zeta", 0.3}})));
}

TEST_CASE("kv eta sweep values") {
  const SweepResult r = run_sweep(spec("kv", "eta:0.1:0.9:9"));
  CHECK(r.columns.size() == 7);
  CHECK(r.failures == 0);
  for (const auto& row : r.rows) {
    CHECK(row[1] == doctest::Approx(kv_tc_scaled(row[0])).epsilon(1e-14));
    CHECK(row[2] == doctest::Approx(kv_restitution(row[0])).epsilon(1e-14));
    CHECK(row[6] == doctest::Approx(kv_peak_force_scaled(row[0])).epsilon(1e-12));
  }
}

TEST_CASE("failed points become NaN rows with notes") {
  const SweepResult r = run_sweep(spec("maxwell", "zeta:0.5:1.5:5"));
  CHECK(r.failures == 3);
  CHECK(r.notes.size() == 3);
  CHECK(std::isnan(r.rows[4][1]));
  CHECK(r.rows[4][0] == 1.5);
  CHECK_FALSE(std::isnan(r.rows[0][1]));
}

TEST_CASE("drop-weight sweep carries the asymptotic columns") {
  const SweepResult r = run_sweep(spec("kv", "eps0:0:0.05:6", {{"eta", 0.3}}));
  CHECK(r.columns.back() == "e_asym");
  CHECK(r.rows[0][1] == doctest::Approx(r.rows[0][7]).epsilon(1e-12));
  for (const auto& row : r.rows) CHECK(std::abs(row[2] - row[8]) < 0.01);
}

TEST_CASE("rho sweep compares against the expansion") {
  const SweepResult r = run_sweep(spec("sls", "rho:0.01:0.05:5", {{"zeta", 0.3}}));
  REQUIRE(r.columns.size() == 11);
  for (const auto& row : r.rows) {
    CHECK(std::abs(row[9]) < 0.02);
    CHECK(std::abs(row[10]) < 0.02);
  }
}

TEST_CASE("Lambda sweep flags oracle points") {
  const SweepResult r = run_sweep(spec("sls", "Lambda:0.01:1:12", {{"rho", 0.01}}));
  bool oracle = false, closed = false;
  for (const auto& row : r.rows) {
    CHECK((row[7] > 0.0) == (row[8] == 0.0));
    oracle = oracle || row[8] == 1.0;
    closed = closed || row[8] == 0.0;
  }
  CHECK(oracle);
  CHECK(closed);
}

TEST_CASE("parallel sweeps equal the serial reference bit for bit") {
  const std::vector<SweepSpec> specs = {
      spec("kv", "eta:0.01:1.2:64"),
      spec("maxwell", "zeta:0.01:0.99:64"),
      spec("kv", "eps0:0:0.2:16", {{"eta", 0.4}}),
      spec("maxwell", "eps0:0:0.2:16", {{"zeta", 0.4}}),
      spec("sls", "rho:0.01:0.9:16", {{"eta", 0.3}}),
      spec("sls", "rho:0.01:0.9:16", {{"zeta", 0.3}}),
      spec("sls", "Lambda:0.01:4:16", {{"rho", 0.05}}),
  };
  for (const int threads : {1, 2, 3, 8}) {
    set_thread_cap(threads);
    for (const SweepSpec& s : specs) {
      CAPTURE(s.model);
      CAPTURE(s.param);
      check_identical(run_sweep(s), run_sweep_serial(s));
    }
  }
}
