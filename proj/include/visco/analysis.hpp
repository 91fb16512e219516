#pragma once

// Drop-test analysis: engineering stress and strain, the incremental dynamic
// modulus E_dyn = d sigma / d eps, the modulus at a reference stress, and the
// comparison of experiment records against linear-impact predictions.

#include <iosfwd>
#include <string>
#include <vector>

#include "visco/models.hpp"
#include "visco/trajectory.hpp"

namespace visco {

inline constexpr double kStandardGravity = 9.81;

/// Cylindrical sample: radius a and thickness h [m].
struct SampleGeometry {
  double a = 2.5e-3;
  double h = 0.5e-3;
};

struct StressStrain {
  std::vector<double> sigma;  // F / (pi a^2) [Pa]
  std::vector<double> eps;    // x / h
};

StressStrain stress_strain(const Trajectory& traj, const SampleGeometry& geom);

/// E_dyn(t_i) = (h / pi a^2) F'(t_i) / x'(t_i). F' is taken from traj.Fdot when
/// present, otherwise from five-point (fourth-order) differences of F. Samples
/// with |x'| < kVelocityGuard * |x'(0)| are NaN.
std::vector<double> dynamic_modulus(const Trajectory& traj, const SampleGeometry& geom);
inline constexpr double kVelocityGuard = 1e-6;

/// Fourth-order derivative estimate of y(t) on an arbitrary increasing grid.
std::vector<double> differentiate(const std::vector<double>& t, const std::vector<double>& y);

/// Maxwell E_dyn in closed form,
/// (h / pi a^2) k (cos wt - r sin wt) / (cos wt + r sin wt), r = zeta omega0/omega.
/// Throws SingularityError where the velocity is inside the guard band.
double maxwell_dynamic_modulus(const MaxwellParams& p, const SampleGeometry& geom, double t);

struct ModulusAtStress {
  double t = 0.0;  // first time the stress reaches the target [s]
  double E = 0.0;  // E_dyn at that time [Pa]
};

/// Solves exp(-zeta omega0 t) sin(omega t) = pi a^2 omega sigma / (k v0) on
/// [0, t_M]. Throws NoCrossingError when the peak stress is below the target.
ModulusAtStress solve_e10(const MaxwellParams& p, const SampleGeometry& geom,
                          double sigma_target = 10e6);

/// Fraction of impact energy dissipated, 1 - e_*^2. Throws DomainError
/// unless 0 <= e_* <= 1.
double energy_dissipation(double e_star);

/// One row of a drop-test table, SI units; *_sd are the reported spreads.
struct ExperimentRecord {
  double h0 = 0.0;  // drop height [m]
  double v0 = 0.0;  // impact velocity [m/s]
  double E_max = 0.0, E_max_sd = 0.0;          // [Pa]
  double E_10 = 0.0, E_10_sd = 0.0;            // [Pa]
  double sigma_max = 0.0, sigma_max_sd = 0.0;  // [Pa]
  double eps_max = 0.0, eps_max_sd = 0.0;
  double e_star = 0.0, e_star_sd = 0.0;
  double delta_m = 0.0;  // mass increase [%]
  /// v0 within kVelocityTolerance of sqrt(2 g h0).
  bool v0_consistent = true;
};
inline constexpr double kVelocityTolerance = 0.02;

/// CSV header of the experiment table (mm, m/s, MPa).
inline constexpr const char* kExperimentHeader =
    "h0_mm,v0_ms,Emax_MPa,Emax_sd,E10_MPa,E10_sd,sigmax_MPa,sigmax_sd,epsmax,epsmax_sd,"
    "estar,estar_sd,dm_pct";

/// Throws ParseError (with row and column) on a missing column, a short row,
/// a bad number, or an empty table.
std::vector<ExperimentRecord> ingest_table(std::istream& in);
std::vector<ExperimentRecord> ingest_table(const std::string& path);
void write_table(std::ostream& out, const std::vector<ExperimentRecord>& records);

/// Path of the bundled drop-test table.
std::string bundled_table_path();

struct Verdict {
  std::string prediction;  // what linear impact theory predicts
  std::string observed;    // the data sequence it was checked against
  bool holds = false;
};

struct LinearityReport {
  std::vector<double> v0;
  std::vector<double> stiffness_ratio;  // sigma_max / eps_max [Pa]
  std::vector<double> energy_loss;      // 1 - e_*^2
  bool ratio_increasing = false;        // strictly, in order of increasing v0
  std::vector<Verdict> verdicts;
};

/// Quantities are "constant" when (max - min) / mean < tolerance. Records are
/// sorted by v0 first. Throws DomainError for fewer than two records.
LinearityReport linearity_report(std::vector<ExperimentRecord> records,
                                 double tolerance = 0.05);

}  // namespace visco
