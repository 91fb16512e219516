#pragma once

// Short-time response of a thin biphasic layer bonded to a rigid substrate
// and loaded by a rigid flat indenter of radius a. The layer behaves as a
// Maxwell element whose spring and relaxation time follow from the solid
// shear modulus, permeability and thickness.

#include <vector>

#include "visco/models.hpp"

namespace visco {

/// Thin layer properties (SI). H_A = lambda_s + 2 mu_s is derived.
class BiphasicLayer {
 public:
  /// Throws DomainError unless every input is positive and finite.
  BiphasicLayer(double mu_s, double lambda_s, double kappa, double h, double a);

  double mu_s() const noexcept { return mu_s_; }
  double lambda_s() const noexcept { return lambda_s_; }
  double kappa() const noexcept { return kappa_; }
  double h() const noexcept { return h_; }
  double a() const noexcept { return a_; }
  /// Aggregate modulus lambda_s + 2 mu_s.
  double H_A() const noexcept { return H_A_; }

  /// The asymptotics assume h << a; true when h/a exceeds kThinRatio.
  bool thickness_warning() const noexcept;
  static constexpr double kThinRatio = 0.2;

 private:
  double mu_s_, lambda_s_, kappa_, h_, a_, H_A_;
};

struct EquivalentMaxwell {
  double k = 0.0;      // [N/m], 3 pi mu_s a^4 / (8 h^3)
  double tau_R = 0.0;  // [s], h^2 / (3 mu_s kappa)
  double chi = 0.0;    // [1/s], 1/tau_R
};

EquivalentMaxwell equivalent_maxwell(const BiphasicLayer& layer);

/// Maxwell element (k, b = k tau_R) loaded by mass m at velocity v0.
/// Throws DomainError when the resulting zeta >= 1.
MaxwellParams reduce_to_maxwell(const BiphasicLayer& layer, double m, double v0);

struct ValidityWindow {
  double tau_D = 0.0;   // diffusion time h^2/(H_A kappa) [s]
  double usable = 0.0;  // kUsableFraction * tau_D [s]
};
inline constexpr double kUsableFraction = 0.1;

ValidityWindow validity_window(const BiphasicLayer& layer);

/// Indenter displacement sampled at increasing times, delta0(t[0]) = 0.
/// Linear between samples.
struct DisplacementHistory {
  std::vector<double> t;
  std::vector<double> delta0;
};

/// Contact pressure at radii r (0 <= r <= a) and time t inside the history:
/// P = 3 mu_s/(4 h^3) (a^2 - r^2) [delta0(t) - chi int_0^t exp(-chi (t-s)) delta0(s) ds],
/// the integral by the trapezoid rule on the samples. Throws DomainError for r > a
/// or t outside the history.
std::vector<double> pressure_profile(const BiphasicLayer& layer, const DisplacementHistory& hist,
                                     const std::vector<double>& r, double t);

/// F(t_i) = k int_0^t exp(-(t-s)/tau_R) delta0'(s) ds at every sample, by the
/// exact recursion for piecewise-linear delta0.
std::vector<double> biphasic_force(const BiphasicLayer& layer, const DisplacementHistory& hist);

/// Loss factor zeta of the reduced element for impactor mass m,
/// zeta = sqrt(6 m mu_s / pi) kappa / (a^2 sqrt(h)).
double biphasic_loss_factor(const BiphasicLayer& layer, double m);

}  // namespace visco
