#include "visco/biphasic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "visco/errors.hpp"

namespace visco {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(name) + " must be positive, got " + std::to_string(v));
  }
}

void check_history(const DisplacementHistory& hist) {
  if (hist.t.size() != hist.delta0.size()) {
    throw DomainError("displacement history columns differ in length");
  }
  if (hist.t.empty()) throw DomainError("displacement history is empty");
  for (std::size_t i = 1; i < hist.t.size(); ++i) {
    if (!(hist.t[i] > hist.t[i - 1])) {
      throw DomainError("displacement history times must be strictly increasing");
    }
  }
}

}  // namespace

BiphasicLayer::BiphasicLayer(double mu_s, double lambda_s, double kappa, double h, double a)
    : mu_s_(mu_s), lambda_s_(lambda_s), kappa_(kappa), h_(h), a_(a) {
  require_positive(mu_s, "mu_s");
  require_positive(lambda_s, "lambda_s");
  require_positive(kappa, "kappa");
  require_positive(h, "h");
  require_positive(a, "a");
  H_A_ = lambda_s + 2.0 * mu_s;
}

bool BiphasicLayer::thickness_warning() const noexcept { return h_ / a_ > kThinRatio; }

EquivalentMaxwell equivalent_maxwell(const BiphasicLayer& layer) {
  const double h = layer.h();
  const double a2 = layer.a() * layer.a();
  EquivalentMaxwell out;
  out.k = 3.0 * kPi * layer.mu_s() * a2 * a2 / (8.0 * h * h * h);
  out.tau_R = h * h / (3.0 * layer.mu_s() * layer.kappa());
  out.chi = 1.0 / out.tau_R;
  return out;
}

MaxwellParams reduce_to_maxwell(const BiphasicLayer& layer, double m, double v0) {
  const EquivalentMaxwell eq = equivalent_maxwell(layer);
  MaxwellParams p;
  p.m = m;
  p.k = eq.k;
  p.b = eq.k * eq.tau_R;
  p.v0 = v0;
  p.g = 0.0;
  derive_maxwell(p);
  return p;
}

ValidityWindow validity_window(const BiphasicLayer& layer) {
  ValidityWindow w;
  w.tau_D = layer.h() * layer.h() / (layer.H_A() * layer.kappa());
  w.usable = kUsableFraction * w.tau_D;
  return w;
}

std::vector<double> pressure_profile(const BiphasicLayer& layer, const DisplacementHistory& hist,
                                     const std::vector<double>& r, double t) {
  check_history(hist);
  if (t < hist.t.front() || t > hist.t.back()) {
    throw DomainError("time " + std::to_string(t) + " lies outside the displacement history");
  }
  const double a = layer.a();
  const double chi = equivalent_maxwell(layer).chi;

  // Trapezoid rule on exp(-chi (t - s)) delta0(s) over the samples up to t,
  // closing with the linearly interpolated value at t.
  auto weight = [&](double s) { return std::exp(-chi * (t - s)); };
  double integral = 0.0;
  double delta_t = hist.delta0.front();
  std::size_t i = 0;
  for (; i + 1 < hist.t.size() && hist.t[i + 1] <= t; ++i) {
    integral += 0.5 * (hist.t[i + 1] - hist.t[i]) *
                (weight(hist.t[i]) * hist.delta0[i] + weight(hist.t[i + 1]) * hist.delta0[i + 1]);
  }
  delta_t = hist.delta0[i];
  if (hist.t[i] < t) {
    const double frac = (t - hist.t[i]) / (hist.t[i + 1] - hist.t[i]);
    delta_t = hist.delta0[i] + frac * (hist.delta0[i + 1] - hist.delta0[i]);
    integral += 0.5 * (t - hist.t[i]) * (weight(hist.t[i]) * hist.delta0[i] + delta_t);
  }
  const double bracket = delta_t - chi * integral;
  const double scale = 3.0 * layer.mu_s() / (4.0 * std::pow(layer.h(), 3));

  std::vector<double> out;
  out.reserve(r.size());
  for (const double ri : r) {
    if (!(ri >= 0.0) || ri > a) {
      throw DomainError("radius " + std::to_string(ri) + " outside the contact disk [0, a]");
    }
    out.push_back(scale * (a * a - ri * ri) * bracket);
  }
  return out;
}

std::vector<double> biphasic_force(const BiphasicLayer& layer, const DisplacementHistory& hist) {
  check_history(hist);
  const EquivalentMaxwell eq = equivalent_maxwell(layer);
  std::vector<double> out(hist.t.size(), 0.0);
  double J = 0.0;  // int exp(-(t-s)/tau_R) delta0'(s) ds
  for (std::size_t i = 1; i < hist.t.size(); ++i) {
    const double dt = hist.t[i] - hist.t[i - 1];
    const double slope = (hist.delta0[i] - hist.delta0[i - 1]) / dt;
    const double decay = std::exp(-dt / eq.tau_R);
    J = decay * J - slope * eq.tau_R * std::expm1(-dt / eq.tau_R);
    out[i] = eq.k * J;
  }
  return out;
}

double biphasic_loss_factor(const BiphasicLayer& layer, double m) {
  require_positive(m, "m");
  const double a2 = layer.a() * layer.a();
  return std::sqrt(6.0 * m * layer.mu_s() / kPi) * layer.kappa() / (a2 * std::sqrt(layer.h()));
}

}  // namespace visco
