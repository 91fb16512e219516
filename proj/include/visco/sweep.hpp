#pragma once

// Parameter sweeps over the nondimensional groups. Every grid point is an
// independent pure evaluation; the parallel driver distributes points over
// OpenMP threads and the serial driver is kept as the reference it must match.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace visco {

/// model: kv | maxwell | sls. param: eta | zeta | rho | eps0 | Lambda.
///   kv      + eta            free Kelvin-Voigt impact
///   maxwell + zeta           free Maxwell impact
///   kv      + eps0           drop weight, fixed eta
///   maxwell + eps0           drop weight, fixed zeta
///   sls     + rho            exact solid vs first-order expansion, fixed eta or zeta
///   sls     + Lambda         exact solid, fixed rho (oracle where D <= 0)
struct SweepSpec {
  std::string model;
  std::string param;
  double lo = 0.0;
  double hi = 1.0;
  std::size_t steps = 2;
  std::map<std::string, double> fixed;
};

/// Parses "param:lo:hi:steps". Throws ConfigError.
SweepSpec parse_sweep_spec(const std::string& text, const std::string& model);

struct SweepResult {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;  // grid order, NaN where a point failed
  std::vector<std::string> notes;         // one per failed point
  std::size_t failures = 0;
};

/// Checks a sweep (model/param pairing, lo < hi, steps >= 2, required fixed
/// values). Throws ConfigError.
void validate_sweep(const SweepSpec& spec);

/// Grid value i of the sweep; the last point is hi exactly.
double sweep_point(const SweepSpec& spec, std::size_t i);

/// OpenMP-parallel evaluation; row order is the grid order.
SweepResult run_sweep(const SweepSpec& spec);

/// Single-threaded reference; bit-identical to run_sweep.
SweepResult run_sweep_serial(const SweepSpec& spec);

/// Caps the OpenMP thread count; values < 1 are ignored.
void set_thread_cap(int threads);

/// Applies VISCO_IMPACT_THREADS when set to a positive integer.
void apply_thread_env();

}  // namespace visco
