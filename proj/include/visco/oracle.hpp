#pragma once

// Independent numerical solver for the general linear hereditary impact
// problem. In scaled variables t = tau_R tau, x = v0 tau_R xi it reads
//
//   xi'' + alpha * I(tau) = gamma,   I(tau) = int_0^tau Psi(tau - s) xi'(s) ds,
//   xi(0) = 0, xi'(0) = 1,           alpha = k0 tau_R^2 / m,  gamma = g tau_R / v0,
//
// and the contact force is F = k0 tau_R v0 I. The solver does not use any
// closed-form solution and serves as ground truth for the analytic modules.

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "visco/trajectory.hpp"

namespace visco {

/// One term weight * exp(-tau / time) of an exponential-sum relaxation function.
struct PronyTerm {
  double weight = 0.0;
  double time = 1.0;
};

/// Psi(tau) = c_inf + sum_i weight_i exp(-tau/time_i), plus an optional
/// dashpot contribution c_dashpot * delta(tau) that turns the hereditary
/// integral into c_dashpot * xi'(tau) (the Kelvin-Voigt limit).
struct ExponentialForm {
  double c_inf = 0.0;
  double c_dashpot = 0.0;
  std::vector<PronyTerm> terms;
};

/// Dimensionless relaxation function with its stiffness and time scales,
/// k(t) = k0 Psi(t / tau_R).
class RelaxationKernel {
 public:
  enum class Kind { elastic, maxwell, kv_limit, standard_solid, prony, table, custom };

  /// Psi = 1. tau_R only sets the time unit.
  static RelaxationKernel elastic(double k0, double tau_R);
  /// Spring k in series with dashpot b: Psi = exp(-tau), tau_R = b/k.
  static RelaxationKernel maxwell(double k, double b);
  /// Spring k parallel to dashpot b, F = k x + b x'. tau_R = b/k.
  static RelaxationKernel kv_limit(double k, double b);
  /// Psi = rho + (1 - rho) exp(-tau), rho = k_inf / k0.
  static RelaxationKernel standard_solid(double k0, double k_inf, double tau_R);
  static RelaxationKernel prony(double k0, double tau_R, ExponentialForm form);
  /// Piecewise-linear Psi through (tau, Psi) points; first point must be (0, 1).
  /// Constant beyond the last point.
  static RelaxationKernel table(double k0, double tau_R,
                                std::vector<std::pair<double, double>> points);
  static RelaxationKernel custom(double k0, double tau_R, std::function<double(double)> psi);

  Kind kind() const noexcept { return kind_; }
  double k0() const noexcept { return k0_; }
  double tau_R() const noexcept { return tau_R_; }

  /// Regular part of Psi (the dashpot delta of kv_limit is not included).
  double psi(double tau) const;

  /// Set for elastic, maxwell, kv_limit, standard_solid and prony kernels.
  const std::optional<ExponentialForm>& exponential_form() const noexcept { return form_; }

  /// Psi non-increasing on a sample grid. Physical kernels are; violating
  /// kernels still run.
  bool monotone() const noexcept { return monotone_; }

  double alpha(double m) const { return k0_ * tau_R_ * tau_R_ / m; }

 private:
  RelaxationKernel(Kind kind, double k0, double tau_R);
  void finish();

  Kind kind_;
  double k0_;
  double tau_R_;
  std::optional<ExponentialForm> form_;
  std::function<double(double)> psi_;
  bool monotone_ = true;
};

struct OracleOptions {
  /// Scaled step; default 1e-4 * min(pi/sqrt(alpha), pi * shortest kernel time).
  std::optional<double> dt_scaled;
  /// Scaled time after which a still-positive force means no separation;
  /// default 10 pi / sqrt(alpha Psi_late), Psi_late = max(Psi(pi/sqrt(alpha)), 1e-4).
  std::optional<double> horizon_scaled;
  /// Evaluate the convolution by stored-history trapezoid quadrature even when
  /// the kernel has an exponential form.
  bool force_history = false;
};

struct OracleRun {
  Trajectory trajectory;  // dimensional; one row per step, last row at t_c
  ImpactMetrics metrics;  // peaks refined by parabolic interpolation of samples
  double alpha = 0.0;
  double tau_c = 0.0;     // scaled contact duration
  double dt_scaled = 0.0;
  std::size_t steps = 0;
  bool used_history = false;
};

/// Free impact of mass m at velocity v0 against the kernel.
/// Throws ConfigError for dt <= 0 and NoSeparationError past the horizon.
OracleRun integrate_impact(const RelaxationKernel& kernel, double m, double v0,
                           const OracleOptions& options = {});

/// Same with the constant body force m g (drop-weight test).
OracleRun integrate_impact_with_gravity(const RelaxationKernel& kernel, double m, double v0,
                                        double g, const OracleOptions& options = {});

struct InvarianceReport {
  std::vector<double> velocities;
  std::vector<double> e_star;
  std::vector<double> tc_scaled;  // omega0 t_c with omega0 = sqrt(k0/m)
  std::vector<double> x_m;
  std::vector<double> F_M;
  double max_de_star = 0.0;
  double max_dtc_scaled = 0.0;
  /// max over runs of |x_m(v)/v / (x_m(v_ref)/v_ref) - 1|, likewise for F_M.
  double max_xm_linearity = 0.0;
  double max_fm_linearity = 0.0;
};

/// Runs the oracle at every velocity and reports the spread of the
/// velocity-independent quantities and the linearity of the peaks.
InvarianceReport restitution_invariance_probe(const RelaxationKernel& kernel, double m,
                                              const std::vector<double>& velocities,
                                              const OracleOptions& options = {});

}  // namespace visco
