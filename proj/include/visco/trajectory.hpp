#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace visco {

/// Sampled impact history over [0, t_c]. F is the contact force, positive in
/// compression. Fdot is filled by closed-form models and left empty for data
/// read from disk; it is not part of the CSV schema.
struct Trajectory {
  std::vector<double> t;
  std::vector<double> x;
  std::vector<double> xdot;
  std::vector<double> xddot;
  std::vector<double> F;
  std::vector<double> Fdot;

  std::size_t size() const noexcept { return t.size(); }
  bool empty() const noexcept { return t.empty(); }
  void reserve(std::size_t n);
  void push_back(double time, double disp, double vel, double acc, double force);
  void push_back(double time, double disp, double vel, double acc, double force,
                 double force_rate);
};

/// Main impact parameters. The optional companions are only produced by
/// models that define them.
struct ImpactMetrics {
  double t_c = 0.0;     // impact duration [s]
  double e_star = 0.0;  // coefficient of restitution
  double t_m = 0.0;     // time of maximum displacement [s]
  double x_m = 0.0;     // maximum displacement [m]
  double t_M = 0.0;     // time of maximum force [s]
  double F_M = 0.0;     // maximum force [N]
  std::optional<double> x_M;  // displacement at maximum force [m]
  std::optional<double> F_m;  // force at maximum displacement [N]
};

/// Shortest decimal form that reads back bit-exactly (17 significant digits max).
std::string format_double(double v);

/// Parses a double written by format_double (or any decimal). Throws ParseError.
double parse_double(const std::string& text);

/// CSV with header `t,x,xdot,xddot,F`.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
void write_trajectory_csv(const std::string& path, const Trajectory& traj);
Trajectory read_trajectory_csv(std::istream& in);

}  // namespace visco
