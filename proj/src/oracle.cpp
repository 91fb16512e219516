#include "visco/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "visco/errors.hpp"
#include "visco/models.hpp"

namespace visco {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDefaultStepFraction = 1e-4;
constexpr double kDefaultHorizonPeriods = 10.0;
constexpr double kMinLateStiffness = 1e-4;
constexpr double kMaxSteps = 5e7;
constexpr int kBisectionIterations = 64;

void check_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(name) + " must be positive and finite, got " +
                      std::to_string(value));
  }
}

double hermite(double p0, double d0, double p1, double d1, double h, double s) {
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2.0 * s3 - 3.0 * s2 + 1.0) * p0 + (s3 - 2.0 * s2 + s) * h * d0 +
         (-2.0 * s3 + 3.0 * s2) * p1 + (s3 - s2) * h * d1;
}

/// Fraction s in (0, 1] where the Hermite cubic through (p0, d0), (p1, d1)
/// first becomes non-positive; requires p0 > 0 >= p1.
double hermite_root(double p0, double d0, double p1, double d1, double h) {
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < kBisectionIterations && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (hermite(p0, d0, p1, d1, h, mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Vertex of the parabola through (-1, a), (0, b), (1, c): offset and value.
std::pair<double, double> parabola_vertex(double a, double b, double c) {
  const double curv = a - 2.0 * b + c;
  if (curv >= 0.0) return {0.0, b};
  const double off = 0.5 * (a - c) / curv;
  return {off, b + 0.25 * (c - a) * off};
}

/// Scaled state at one grid point.
struct Node {
  double tau = 0.0;
  double xi = 0.0;
  double v = 0.0;
  double acc = 0.0;  // xi''
  double I = 0.0;
  double dI = kNaN;  // I', NaN when not available
};

// Exponential-sum kernel: I = c_inf xi + c_d v + sum c_i q_i, q_i' = v - q_i/theta_i.
class PronySystem {
 public:
  PronySystem(const ExponentialForm& form, double alpha, double gamma)
      : form_(form), alpha_(alpha), gamma_(gamma), n_(2 + form.terms.size()) {}

  std::size_t size() const noexcept { return n_; }

  double integral(const std::vector<double>& y) const {
    double I = form_.c_inf * y[0] + form_.c_dashpot * y[1];
    for (std::size_t i = 0; i < form_.terms.size(); ++i) I += form_.terms[i].weight * y[2 + i];
    return I;
  }

  void deriv(const std::vector<double>& y, std::vector<double>& dy) const {
    dy[0] = y[1];
    dy[1] = gamma_ - alpha_ * integral(y);
    for (std::size_t i = 0; i < form_.terms.size(); ++i) {
      dy[2 + i] = y[1] - y[2 + i] / form_.terms[i].time;
    }
  }

  Node node(double tau, const std::vector<double>& y) const {
    Node out;
    out.tau = tau;
    out.xi = y[0];
    out.v = y[1];
    out.I = integral(y);
    out.acc = gamma_ - alpha_ * out.I;
    double dI = form_.c_inf * y[1] + form_.c_dashpot * out.acc;
    for (std::size_t i = 0; i < form_.terms.size(); ++i) {
      dI += form_.terms[i].weight * (y[1] - y[2 + i] / form_.terms[i].time);
    }
    out.dI = dI;
    return out;
  }

 private:
  const ExponentialForm& form_;
  double alpha_;
  double gamma_;
  std::size_t n_;
};

class Rk4 {
 public:
  explicit Rk4(std::size_t n) : k1_(n), k2_(n), k3_(n), k4_(n), tmp_(n) {}

  template <class System>
  void step(const System& sys, const std::vector<double>& y, double h, std::vector<double>& out) {
    const std::size_t n = y.size();
    sys.deriv(y, k1_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + 0.5 * h * k1_[i];
    sys.deriv(tmp_, k2_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + 0.5 * h * k2_[i];
    sys.deriv(tmp_, k3_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + h * k3_[i];
    sys.deriv(tmp_, k4_);
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = y[i] + h / 6.0 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
    }
  }

 private:
  std::vector<double> k1_, k2_, k3_, k4_, tmp_;
};

struct Problem {
  double alpha = 0.0;
  double gamma = 0.0;
  double dt = 0.0;
  double horizon = 0.0;
};

struct RawRun {
  std::vector<Node> nodes;  // grid nodes followed by the contact-end node
  bool used_history = false;
};

[[noreturn]] void throw_no_separation(const Problem& pb) {
  throw NoSeparationError("contact force still positive at scaled horizon " +
                          std::to_string(pb.horizon) + " (alpha = " + std::to_string(pb.alpha) +
                          ", gamma = " + std::to_string(pb.gamma) + ")");
}

std::size_t max_steps(const Problem& pb) {
  return static_cast<std::size_t>(std::ceil(pb.horizon / pb.dt));
}

RawRun run_prony(const ExponentialForm& form, const Problem& pb) {
  const PronySystem sys(form, pb.alpha, pb.gamma);
  Rk4 rk(sys.size());
  std::vector<double> y(sys.size(), 0.0);
  std::vector<double> next(sys.size(), 0.0);
  y[1] = 1.0;

  RawRun run;
  const std::size_t limit = max_steps(pb);
  run.nodes.reserve(std::min<std::size_t>(limit + 2, 1u << 20));
  run.nodes.push_back(sys.node(0.0, y));
  for (std::size_t n = 0; n < limit; ++n) {
    rk.step(sys, y, pb.dt, next);
    const Node prev = run.nodes.back();
    const Node cur = sys.node(static_cast<double>(n + 1) * pb.dt, next);
    if (prev.I > 0.0 && cur.I <= 0.0) {
      const double s = hermite_root(prev.I, prev.dI, cur.I, cur.dI, pb.dt);
      rk.step(sys, y, s * pb.dt, next);
      Node end = sys.node(prev.tau + s * pb.dt, next);
      run.nodes.push_back(end);
      return run;
    }
    run.nodes.push_back(cur);
    y.swap(next);
  }
  throw_no_separation(pb);
}

// Arbitrary kernel: the convolution is a trapezoid sum over the stored
// velocity history plus the partial interval ending at the stage point.
class HistorySystem {
 public:
  HistorySystem(const RelaxationKernel& kernel, const Problem& pb) : kernel_(kernel), pb_(pb) {}

  /// Psi at (k + offset) dt for offset in {0, 1/2}, cached.
  double psi_grid(std::size_t k, bool half) {
    auto& cache = half ? half_ : full_;
    while (cache.size() <= k) {
      const double off = half ? 0.5 : 0.0;
      cache.push_back(kernel_.psi((static_cast<double>(cache.size()) + off) * pb_.dt));
    }
    return cache[k];
  }

  /// Sum over the full intervals [tau_j, tau_{j+1}], j < n, evaluated at
  /// tau_n + c dt with c in {0, 1/2, 1}.
  double past(const std::vector<double>& v, std::size_t n, int twice_c) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t lag = n - j;
      double a = 0.0;
      double b = 0.0;
      if (twice_c == 0) {
        a = psi_grid(lag, false);
        b = psi_grid(lag - 1, false);
      } else if (twice_c == 1) {
        a = psi_grid(lag, true);
        b = psi_grid(lag - 1, true);
      } else {
        a = psi_grid(lag + 1, false);
        b = psi_grid(lag, false);
      }
      sum += a * v[j] + b * v[j + 1];
    }
    return 0.5 * pb_.dt * sum;
  }

  /// Same sum evaluated at tau_n + delta for arbitrary delta.
  double past_at(const std::vector<double>& v, std::size_t n, double delta) const {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double lag = static_cast<double>(n - j) * pb_.dt + delta;
      sum += kernel_.psi(lag) * v[j] + kernel_.psi(lag - pb_.dt) * v[j + 1];
    }
    return 0.5 * pb_.dt * sum;
  }

  /// I at tau_n + delta given the past sum and the stage velocity.
  double integral(double past_sum, double v_n, double delta, double v_stage) const {
    return past_sum + 0.5 * delta * (kernel_.psi(delta) * v_n + kernel_.psi(0.0) * v_stage);
  }

 private:
  const RelaxationKernel& kernel_;
  const Problem& pb_;
  std::vector<double> full_;
  std::vector<double> half_;
};

RawRun run_history(const RelaxationKernel& kernel, const Problem& pb) {
  HistorySystem sys(kernel, pb);
  const double h = pb.dt;
  const double a = pb.alpha;
  const double g = pb.gamma;
  std::vector<double> vel{1.0};
  const std::size_t limit = max_steps(pb);

  RawRun run;
  run.used_history = true;
  Node first;
  first.v = 1.0;
  first.acc = g;
  run.nodes.push_back(first);

  // One RK4 step of length delta from node n. `past0` is the past sum at
  // tau_n; the others are evaluated at the stage offsets.
  auto advance = [&](const Node& cur, double past0, double past_half, double past_full,
                     double delta) {
    const double v1 = cur.v;
    const double a1 = g - a * sys.integral(past0, cur.v, 0.0, v1);
    const double v2 = cur.v + 0.5 * delta * a1;
    const double a2 = g - a * sys.integral(past_half, cur.v, 0.5 * delta, v2);
    const double v3 = cur.v + 0.5 * delta * a2;
    const double a3 = g - a * sys.integral(past_half, cur.v, 0.5 * delta, v3);
    const double v4 = cur.v + delta * a3;
    const double a4 = g - a * sys.integral(past_full, cur.v, delta, v4);
    Node out;
    out.tau = cur.tau + delta;
    out.xi = cur.xi + delta / 6.0 * (v1 + 2.0 * v2 + 2.0 * v3 + v4);
    out.v = cur.v + delta / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
    return out;
  };

  double past_now = 0.0;
  for (std::size_t n = 0; n < limit; ++n) {
    const Node cur = run.nodes.back();
    Node nxt = advance(cur, past_now, sys.past(vel, n, 1), sys.past(vel, n, 2), h);
    nxt.tau = static_cast<double>(n + 1) * h;
    vel.push_back(nxt.v);
    const double past_next = sys.past(vel, n + 1, 0);
    nxt.I = past_next;
    nxt.acc = g - a * nxt.I;
    if (cur.I > 0.0 && nxt.I <= 0.0) {
      // Force slopes from second-order differences of the grid values.
      const double I_before = run.nodes[run.nodes.size() - 2].I;
      const double d0 = (nxt.I - I_before) / (2.0 * h);
      const double d1 = (3.0 * nxt.I - 4.0 * cur.I + I_before) / (2.0 * h);
      const double s = hermite_root(cur.I, d0, nxt.I, d1, h);
      const double delta = s * h;
      const double past_end = sys.past_at(vel, n, delta);
      Node end = advance(cur, past_now, sys.past_at(vel, n, 0.5 * delta), past_end, delta);
      end.tau = cur.tau + delta;
      end.I = sys.integral(past_end, cur.v, delta, end.v);
      end.acc = g - a * end.I;
      run.nodes.push_back(end);
      return run;
    }
    run.nodes.push_back(nxt);
    past_now = past_next;
  }
  throw_no_separation(pb);
}

OracleRun finish_run(const RelaxationKernel& kernel, double v0, const Problem& pb, RawRun raw) {
  const double tau_R = kernel.tau_R();
  const double force_scale = kernel.k0() * tau_R * v0;
  const auto& nodes = raw.nodes;
  const std::size_t count = nodes.size();

  OracleRun out;
  out.alpha = pb.alpha;
  out.dt_scaled = pb.dt;
  out.steps = count - 1;
  out.used_history = raw.used_history;
  out.tau_c = nodes.back().tau;

  out.trajectory.reserve(count);
  const bool with_rate = !raw.used_history;
  if (with_rate) out.trajectory.Fdot.reserve(count);
  for (const Node& nd : nodes) {
    const double t = tau_R * nd.tau;
    const double x = v0 * tau_R * nd.xi;
    const double xd = v0 * nd.v;
    const double xdd = v0 / tau_R * nd.acc;
    const double F = force_scale * nd.I;
    if (with_rate) {
      out.trajectory.push_back(t, x, xd, xdd, F, kernel.k0() * v0 * nd.dI);
    } else {
      out.trajectory.push_back(t, x, xd, xdd, F);
    }
  }

  ImpactMetrics& mt = out.metrics;
  mt.t_c = tau_R * out.tau_c;
  mt.e_star = -nodes.back().v;

  // Maximum displacement: first sign change of the velocity, refined on the
  // Hermite cubic of v (derivative xi'') and read off the cubic of xi.
  mt.t_m = kNaN;
  mt.x_m = kNaN;
  for (std::size_t i = 0; i + 1 < count; ++i) {
    const Node& p = nodes[i];
    const Node& q = nodes[i + 1];
    if (p.v > 0.0 && q.v <= 0.0) {
      const double h = q.tau - p.tau;
      const double s = hermite_root(p.v, p.acc, q.v, q.acc, h);
      mt.t_m = tau_R * (p.tau + s * h);
      mt.x_m = v0 * tau_R * hermite(p.xi, p.v, q.xi, q.v, h, s);
      break;
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < count; ++i) {
    if (nodes[i].I > nodes[best].I) best = i;
  }
  if (best == 0 || best + 1 == count) {
    mt.t_M = tau_R * nodes[best].tau;
    mt.F_M = force_scale * nodes[best].I;
  } else {
    const double h = nodes[best + 1].tau - nodes[best].tau;
    const auto [off, peak] =
        parabola_vertex(nodes[best - 1].I, nodes[best].I, nodes[best + 1].I);
    mt.t_M = tau_R * (nodes[best].tau + off * h);
    mt.F_M = force_scale * peak;
  }
  return out;
}

Problem make_problem(const RelaxationKernel& kernel, double m, double v0, double g,
                     const OracleOptions& options) {
  check_positive(m, "mass m");
  check_positive(v0, "impact velocity v0");
  if (!(g >= 0.0) || !std::isfinite(g)) {
    throw DomainError("gravity g must be non-negative, got " + std::to_string(g));
  }
  Problem pb;
  pb.alpha = kernel.alpha(m);
  pb.gamma = g * kernel.tau_R() / v0;
  const double contact = kPi / std::sqrt(pb.alpha);
  double shortest = 1.0;
  if (const auto& form = kernel.exponential_form()) {
    for (const PronyTerm& t : form->terms) shortest = std::min(shortest, t.time);
  }
  pb.dt = options.dt_scaled.value_or(kDefaultStepFraction * std::min(contact, kPi * shortest));
  const double late = std::max(kernel.psi(contact), kMinLateStiffness);
  pb.horizon = options.horizon_scaled.value_or(kDefaultHorizonPeriods * contact / std::sqrt(late));
  if (!(pb.dt > 0.0) || !std::isfinite(pb.dt)) {
    throw ConfigError("scaled time step must be positive, got " + std::to_string(pb.dt));
  }
  if (!(pb.horizon > 0.0)) {
    throw ConfigError("scaled horizon must be positive, got " + std::to_string(pb.horizon));
  }
  if (pb.horizon / pb.dt > kMaxSteps) {
    throw ConfigError("horizon / dt = " + std::to_string(pb.horizon / pb.dt) +
                      " steps exceeds the limit of " + std::to_string(kMaxSteps) +
                      "; pass a larger dt or a shorter horizon");
  }
  return pb;
}

}  // namespace

RelaxationKernel::RelaxationKernel(Kind kind, double k0, double tau_R)
    : kind_(kind), k0_(k0), tau_R_(tau_R) {
  check_positive(k0, "kernel stiffness k0");
  check_positive(tau_R, "kernel time scale tau_R");
}

void RelaxationKernel::finish() {
  if (form_) {
    const ExponentialForm f = *form_;
    psi_ = [f](double tau) {
      double s = f.c_inf;
      for (const PronyTerm& t : f.terms) s += t.weight * std::exp(-tau / t.time);
      return s;
    };
  }
  const double psi0 = psi_(0.0);
  const double expected = (form_ && form_->c_dashpot > 0.0) ? form_->c_inf : 1.0;
  if (!(std::abs(psi0 - expected) <= 1e-12)) {
    throw ConfigError("relaxation function must satisfy Psi(0) = 1, got " + std::to_string(psi0));
  }
  constexpr int kGrid = 2000;
  constexpr double kSpan = 20.0;
  double prev = psi0;
  for (int i = 1; i <= kGrid; ++i) {
    const double cur = psi_(kSpan * i / kGrid);
    if (cur > prev + 1e-12) {
      monotone_ = false;
      break;
    }
    prev = cur;
  }
}

RelaxationKernel RelaxationKernel::elastic(double k0, double tau_R) {
  RelaxationKernel k(Kind::elastic, k0, tau_R);
  k.form_ = ExponentialForm{1.0, 0.0, {}};
  k.finish();
  return k;
}

RelaxationKernel RelaxationKernel::maxwell(double k, double b) {
  check_positive(b, "dashpot b");
  RelaxationKernel out(Kind::maxwell, k, b / k);
  out.form_ = ExponentialForm{0.0, 0.0, {{1.0, 1.0}}};
  out.finish();
  return out;
}

RelaxationKernel RelaxationKernel::kv_limit(double k, double b) {
  check_positive(b, "dashpot b");
  RelaxationKernel out(Kind::kv_limit, k, b / k);
  out.form_ = ExponentialForm{1.0, 1.0, {}};
  out.finish();
  return out;
}

RelaxationKernel RelaxationKernel::standard_solid(double k0, double k_inf, double tau_R) {
  check_positive(k_inf, "long-term stiffness k_inf");
  if (!(k_inf < k0)) {
    throw DomainError("long-term stiffness must be below k0 for a relaxing solid");
  }
  const double rho = k_inf / k0;
  RelaxationKernel out(Kind::standard_solid, k0, tau_R);
  out.form_ = ExponentialForm{rho, 0.0, {{1.0 - rho, 1.0}}};
  out.finish();
  return out;
}

RelaxationKernel RelaxationKernel::prony(double k0, double tau_R, ExponentialForm form) {
  for (const PronyTerm& t : form.terms) {
    if (!(t.time > 0.0)) throw ConfigError("Prony term times must be positive");
  }
  if (form.c_dashpot < 0.0) throw ConfigError("dashpot weight must be non-negative");
  RelaxationKernel out(Kind::prony, k0, tau_R);
  out.form_ = std::move(form);
  out.finish();
  return out;
}

RelaxationKernel RelaxationKernel::table(double k0, double tau_R,
                                         std::vector<std::pair<double, double>> points) {
  if (points.empty() || points.front().first != 0.0) {
    throw ConfigError("tabulated relaxation function must start at tau = 0");
  }
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i].first > points[i - 1].first)) {
      throw ConfigError("tabulated relaxation times must be strictly increasing");
    }
  }
  RelaxationKernel out(Kind::table, k0, tau_R);
  out.psi_ = [pts = std::move(points)](double tau) {
    if (tau <= 0.0) return pts.front().second;
    if (tau >= pts.back().first) return pts.back().second;
    const auto it = std::upper_bound(pts.begin(), pts.end(), tau,
                                     [](double t, const auto& p) { return t < p.first; });
    const auto& [t1, p1] = *it;
    const auto& [t0, p0] = *(it - 1);
    return p0 + (p1 - p0) * (tau - t0) / (t1 - t0);
  };
  out.finish();
  return out;
}

RelaxationKernel RelaxationKernel::custom(double k0, double tau_R,
                                          std::function<double(double)> psi) {
  if (!psi) throw ConfigError("custom relaxation function is empty");
  RelaxationKernel out(Kind::custom, k0, tau_R);
  out.psi_ = std::move(psi);
  out.finish();
  return out;
}

double RelaxationKernel::psi(double tau) const { return psi_(tau); }

OracleRun integrate_impact(const RelaxationKernel& kernel, double m, double v0,
                           const OracleOptions& options) {
  return integrate_impact_with_gravity(kernel, m, v0, 0.0, options);
}

OracleRun integrate_impact_with_gravity(const RelaxationKernel& kernel, double m, double v0,
                                        double g, const OracleOptions& options) {
  const Problem pb = make_problem(kernel, m, v0, g, options);
  const auto& form = kernel.exponential_form();
  const bool history = !form || options.force_history;
  if (history && form && form->c_dashpot > 0.0) {
    throw ConfigError("the Kelvin-Voigt limit has no regular relaxation function; "
                      "history quadrature is unavailable");
  }
  RawRun raw = history ? run_history(kernel, pb) : run_prony(*form, pb);
  return finish_run(kernel, v0, pb, std::move(raw));
}

InvarianceReport restitution_invariance_probe(const RelaxationKernel& kernel, double m,
                                              const std::vector<double>& velocities,
                                              const OracleOptions& options) {
  if (velocities.empty()) throw ConfigError("invariance probe needs at least one velocity");
  InvarianceReport rep;
  rep.velocities = velocities;
  const double omega0 = std::sqrt(kernel.k0() / m);
  for (const double v0 : velocities) {
    const OracleRun run = integrate_impact(kernel, m, v0, options);
    rep.e_star.push_back(run.metrics.e_star);
    rep.tc_scaled.push_back(omega0 * run.metrics.t_c);
    rep.x_m.push_back(run.metrics.x_m);
    rep.F_M.push_back(run.metrics.F_M);
  }
  const double v_ref = velocities.front();
  for (std::size_t i = 0; i < velocities.size(); ++i) {
    for (std::size_t j = 0; j < velocities.size(); ++j) {
      rep.max_de_star = std::max(rep.max_de_star, std::abs(rep.e_star[i] - rep.e_star[j]));
      rep.max_dtc_scaled =
          std::max(rep.max_dtc_scaled, std::abs(rep.tc_scaled[i] - rep.tc_scaled[j]));
    }
    const double ratio = velocities[i] / v_ref;
    rep.max_xm_linearity =
        std::max(rep.max_xm_linearity, std::abs(rep.x_m[i] / (ratio * rep.x_m.front()) - 1.0));
    rep.max_fm_linearity =
        std::max(rep.max_fm_linearity, std::abs(rep.F_M[i] / (ratio * rep.F_M.front()) - 1.0));
  }
  return rep;
}

}  // namespace visco
