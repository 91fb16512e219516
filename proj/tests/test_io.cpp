#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>

#include <doctest.h>

#include "visco/errors.hpp"
#include "visco/io.hpp"
#include "visco/kelvin_voigt.hpp"
#include "visco/trajectory.hpp"

using namespace visco;

namespace {

void expect_parse_error(const std::function<void()>& fn, const std::string& column) {
  try {
    fn();
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.column() == column);
  }
}

}  // namespace

TEST_CASE("doubles round trip bit-exactly") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 5000; ++i) {
    const double v = std::bit_cast<double>(rng());
    if (!std::isfinite(v)) continue;
    CHECK(std::bit_cast<std::uint64_t>(parse_double(format_double(v))) ==
          std::bit_cast<std::uint64_t>(v));
  }
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK_THROWS_AS(parse_double("abc"), ParseError);
  CHECK_THROWS_AS(parse_double("1.5x"), ParseError);
  CHECK_THROWS_AS(parse_double(""), ParseError);
}

TEST_CASE("trajectory CSV round trip") {
  const Trajectory tr = kv_trajectory({1.0, 2.0, 0.5, 1.3, 0.0}, 257);
  std::stringstream ss;
  write_trajectory_csv(ss, tr);
  const Trajectory back = read_trajectory_csv(ss);
  REQUIRE(back.size() == tr.size());
  for (std::size_t i = 0; i < tr.size(); ++i) {
    CHECK(back.t[i] == tr.t[i]);
    CHECK(back.x[i] == tr.x[i]);
    CHECK(back.xdot[i] == tr.xdot[i]);
    CHECK(back.xddot[i] == tr.xddot[i]);
    CHECK(back.F[i] == tr.F[i]);
  }
  CHECK(back.Fdot.empty());
}

TEST_CASE("trajectory CSV errors") {
  std::istringstream bad_header("t,x,v,a,F\n");
  CHECK_THROWS_AS(read_trajectory_csv(bad_header), ParseError);
  std::istringstream bad_cell("t,x,xdot,xddot,F\n0,0,1,0,0\n1,nope,1,0,0\n");
  try {
    read_trajectory_csv(bad_cell);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.row() == 3);
    CHECK(e.column() == "x");
  }
  std::istringstream short_row("t,x,xdot,xddot,F\n0,0,1\n");
  expect_parse_error([&] { read_trajectory_csv(short_row); }, "xddot");
  CHECK_THROWS_AS(write_trajectory_csv("/nonexistent/dir/out.csv", Trajectory{}),
                  std::runtime_error);
}

TEST_CASE("model parameter files") {
  const KelvinVoigtParams kv = parse_kv_params(R"({"m": 2, "k": 8, "b": 0.5, "v0": 1.5})");
  CHECK(kv.m == 2.0);
  CHECK(kv.k == 8.0);
  CHECK(kv.b == 0.5);
  CHECK(kv.v0 == 1.5);
  CHECK(kv.g == 0.0);
  CHECK(parse_maxwell_params(R"({"m": 1, "k": 1, "b": 3, "v0": 1, "g": 9.81})").g == 9.81);
  expect_parse_error([] { parse_kv_params(R"({"m": 1, "k": 1, "b": 1, "v0": 1, "c": 2})"); }, "c");
  expect_parse_error([] { parse_kv_params(R"({"m": 1, "k": 1, "v0": 1})"); }, "b");
  expect_parse_error([] { parse_kv_params(R"({"m": 1, "k": "x", "b": 1, "v0": 1})"); }, "k");
  CHECK_THROWS_AS(parse_kv_params("{not json"), ParseError);
  CHECK_THROWS_AS(parse_kv_params("[1, 2]"), ParseError);
}

TEST_CASE("standard solid in either configuration") {
  const StandardSolidParams a =
      parse_sls_params(R"({"m": 1, "k1": 3, "k2": 6, "b": 2, "v0": 1})");
  CHECK(a.k1 == 3.0);
  CHECK(a.k2 == 6.0);
  const StandardSolidParams b =
      parse_sls_params(R"({"m": 1, "kappa1": 2, "kappa2": 1, "beta": 0.5, "v0": 1})");
  const StandardSolidParams c = convert_configurations({2.0, 1.0, 0.5});
  CHECK(b.k1 == doctest::Approx(c.k1));
  CHECK(b.k2 == doctest::Approx(c.k2));
  CHECK(b.b == doctest::Approx(c.b));
  CHECK_THROWS_AS(parse_sls_params(R"({"m": 1, "k1": 3, "kappa2": 6, "b": 2, "v0": 1})"),
                  ParseError);
}

TEST_CASE("kernel files") {
  CHECK(parse_kernel(R"({"type": "elastic", "k0": 2, "tau_R": 1})").kind() ==
        RelaxationKernel::Kind::elastic);
  const RelaxationKernel mx = parse_kernel(R"({"type": "maxwell", "k": 2, "b": 4})");
  CHECK(mx.kind() == RelaxationKernel::Kind::maxwell);
  CHECK(mx.tau_R() == 2.0);
  CHECK(parse_kernel(R"({"type": "kv_limit", "k": 1, "b": 0.6})").kind() ==
        RelaxationKernel::Kind::kv_limit);
  const RelaxationKernel sls = parse_kernel(R"({"type": "sls", "k0": 1, "k_inf": 0.4, "tau_R": 2})");
  CHECK(sls.psi(1e3) == doctest::Approx(0.4));
  const RelaxationKernel tab =
      parse_kernel(R"({"type": "table", "k0": 1, "tau_R": 1, "points": [[0, 1], [1, 0.5]]})");
  CHECK(tab.psi(0.5) == doctest::Approx(0.75));
  expect_parse_error([] { parse_kernel(R"({"type": "spring"})"); }, "type");
  expect_parse_error([] { parse_kernel(R"({"k": 1})"); }, "type");
  expect_parse_error([] { parse_kernel(R"({"type": "table", "k0": 1, "tau_R": 1})"); }, "points");
  expect_parse_error(
      [] { parse_kernel(R"({"type": "table", "k0": 1, "tau_R": 1, "points": [[0]]})"); }, "points");
}

TEST_CASE("layer file") {
  const BiphasicLayer l =
      parse_layer(R"({"mu_s": 1e5, "lambda_s": 3e5, "kappa": 2e-15, "h": 1e-3, "a": 1e-2})");
  CHECK(l.H_A() == doctest::Approx(5e5));
  expect_parse_error([] { parse_layer(R"({"mu_s": 1e5, "lambda_s": 3e5, "h": 1e-3, "a": 1e-2})"); },
                     "kappa");
}

TEST_CASE("displacement history") {
  std::istringstream in("t,delta0\n0,0\n0.5,1e-6\n1,3e-6\n");
  const DisplacementHistory h = read_history_csv(in);
  CHECK(h.t == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(h.delta0[2] == 3e-6);
  std::istringstream bad("t,delta0\n0,0\n0.5,oops\n");
  try {
    read_history_csv(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.row() == 3);
    CHECK(e.column() == "delta0");
  }
  std::istringstream header("time,d\n");
  CHECK_THROWS_AS(read_history_csv(header), ParseError);
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(read_text_file("/nonexistent/params.json"), ParseError);
}
