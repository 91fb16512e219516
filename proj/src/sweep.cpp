#include "visco/sweep.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include <omp.h>

#include "visco/errors.hpp"
#include "visco/kelvin_voigt.hpp"
#include "visco/maxwell.hpp"
#include "visco/standard_solid.hpp"
#include "visco/trajectory.hpp"

namespace visco {

namespace {

const std::vector<std::string> kBaseColumns = {"param",     "tc_scaled", "e_star",   "tm_scaled",
                                               "tM_scaled", "xm_scaled", "FM_scaled"};

enum class Kind { kv_eta, mx_zeta, kv_eps0, mx_eps0, sls_rho_kv, sls_rho_mx, sls_lambda };

Kind classify(const SweepSpec& spec) {
  const auto& m = spec.model;
  const auto& p = spec.param;
  auto has = [&](const char* k) { return spec.fixed.count(k) > 0; };
  if (m == "kv" && p == "eta") return Kind::kv_eta;
  if (m == "maxwell" && p == "zeta") return Kind::mx_zeta;
  if (m == "kv" && p == "eps0") {
    if (!has("eta")) throw ConfigError("eps0 sweep of the kv model needs --fixed eta=<value>");
    return Kind::kv_eps0;
  }
  if (m == "maxwell" && p == "eps0") {
    if (!has("zeta")) {
      throw ConfigError("eps0 sweep of the maxwell model needs --fixed zeta=<value>");
    }
    return Kind::mx_eps0;
  }
  if (m == "sls" && p == "rho") {
    if (has("eta") == has("zeta")) {
      throw ConfigError("rho sweep needs exactly one of --fixed eta=<value> or zeta=<value>");
    }
    return has("eta") ? Kind::sls_rho_kv : Kind::sls_rho_mx;
  }
  if (m == "sls" && p == "Lambda") {
    if (!has("rho")) throw ConfigError("Lambda sweep needs --fixed rho=<value>");
    return Kind::sls_lambda;
  }
  throw ConfigError("unsupported sweep '" + p + "' for model '" + m + "'");
}

std::vector<std::string> columns_for(Kind kind) {
  std::vector<std::string> c = kBaseColumns;
  switch (kind) {
    case Kind::kv_eps0:
    case Kind::mx_eps0:
      c.insert(c.end(), {"tc_asym", "e_asym"});
      break;
    case Kind::sls_rho_kv:
    case Kind::sls_rho_mx:
      c.insert(c.end(), {"tc_pert", "e_pert", "tc_relerr", "e_relerr"});
      break;
    case Kind::sls_lambda:
      c.insert(c.end(), {"D", "oracle"});
      break;
    default:
      break;
  }
  return c;
}

/// Scaled base columns for an impact with mass m, velocity v0 and frequency w0.
std::vector<double> scaled(double x, const ImpactMetrics& mt, double m, double v0, double w0) {
  return {x,           w0 * mt.t_c,         mt.e_star,
          w0 * mt.t_m, w0 * mt.t_M,         w0 * mt.x_m / v0,
          mt.F_M / (m * v0 * w0)};
}

std::vector<double> evaluate(Kind kind, const SweepSpec& spec, double x) {
  switch (kind) {
    case Kind::kv_eta: {
      const KelvinVoigtParams p{1.0, 1.0, 2.0 * x, 1.0, 0.0};
      return scaled(x, kv_metrics(p), p.m, p.v0, derive_kv(p).omega0);
    }
    case Kind::mx_zeta: {
      const double b = x > 0.0 ? 1.0 / (2.0 * x) : std::numeric_limits<double>::infinity();
      const MaxwellParams p{1.0, 1.0, b, 1.0, 0.0};
      return scaled(x, mx_metrics(p), p.m, p.v0, derive_maxwell(p).omega0);
    }
    case Kind::kv_eps0: {
      const double eta = spec.fixed.at("eta");
      const KelvinVoigtParams p{1.0, 1.0, 2.0 * eta, 1.0, x};
      auto row = scaled(x, kv_drop_metrics(p), p.m, p.v0, 1.0);
      const ImpactMetrics as = kv_drop_metrics_asymptotic(p);
      row.insert(row.end(), {as.t_c, as.e_star});
      return row;
    }
    case Kind::mx_eps0: {
      const double zeta = spec.fixed.at("zeta");
      const MaxwellParams p{1.0, 1.0, 1.0 / (2.0 * zeta), 1.0, x};
      auto row = scaled(x, mx_drop_metrics(p), p.m, p.v0, 1.0);
      const ImpactMetrics as = mx_drop_metrics_asymptotic(p);
      row.insert(row.end(), {as.t_c, as.e_star});
      return row;
    }
    case Kind::sls_rho_kv:
    case Kind::sls_rho_mx: {
      const bool kv = kind == Kind::sls_rho_kv;
      const double loss = spec.fixed.at(kv ? "eta" : "zeta");
      const StandardSolidParams p =
          kv ? sls_params_from_kv(loss, x) : sls_params_from_maxwell(loss, x);
      const double w0 = kv ? sls_kv_omega0(p) : sls_maxwell_omega0(p);
      const ImpactMetrics mt = sls_simulate(p).metrics;
      auto row = scaled(x, mt, p.m, p.v0, w0);
      const PerturbationEstimate est = kv ? sls_perturb_kv(loss, x) : sls_perturb_maxwell(loss, x);
      row.insert(row.end(), {est.tc_scaled, est.e_star, est.tc_scaled / row[1] - 1.0,
                             est.e_star / row[2] - 1.0});
      return row;
    }
    case Kind::sls_lambda: {
      const double rho = spec.fixed.at("rho");
      StandardSolidParams p;
      const double tau_R = std::sqrt(x);
      p.m = 1.0;
      p.v0 = 1.0;
      p.k1 = 1.0;
      p.k2 = rho / (1.0 - rho);
      p.b = tau_R * (p.k1 + p.k2);
      const StandardSolidRun run = sls_simulate(p);
      auto row = scaled(x, run.metrics, p.m, p.v0, 1.0);
      row.insert(row.end(), {run.discriminant, run.used_oracle ? 1.0 : 0.0});
      return row;
    }
  }
  return {};
}

void evaluate_into(Kind kind, const SweepSpec& spec, std::size_t i, SweepResult& out,
                   std::vector<std::string>& notes) {
  const double x = sweep_point(spec, i);
  try {
    out.rows[i] = evaluate(kind, spec, x);
  } catch (const std::exception& e) {
    std::vector<double> row(out.columns.size(), std::numeric_limits<double>::quiet_NaN());
    row[0] = x;
    out.rows[i] = std::move(row);
    notes[i] = spec.param + "=" + format_double(x) + ": " + e.what();
  }
}

SweepResult prepare(const SweepSpec& spec, Kind kind) {
  SweepResult out;
  out.columns = columns_for(kind);
  out.rows.resize(spec.steps);
  return out;
}

void collect_notes(SweepResult& out, std::vector<std::string>& notes) {
  for (auto& n : notes) {
    if (!n.empty()) {
      out.notes.push_back(std::move(n));
      ++out.failures;
    }
  }
}

}  // namespace

SweepSpec parse_sweep_spec(const std::string& text, const std::string& model) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.size() != 4) throw ConfigError("sweep must be param:lo:hi:steps, got '" + text + "'");
  SweepSpec spec;
  spec.model = model;
  spec.param = parts[0];
  try {
    spec.lo = parse_double(parts[1]);
    spec.hi = parse_double(parts[2]);
    const double steps = parse_double(parts[3]);
    if (!(steps >= 2.0) || steps != std::floor(steps)) throw ConfigError("bad step count");
    spec.steps = static_cast<std::size_t>(steps);
  } catch (const ParseError&) {
    throw ConfigError("sweep bounds and steps must be numbers, got '" + text + "'");
  }
  return spec;
}

void validate_sweep(const SweepSpec& spec) {
  classify(spec);
  if (!(spec.lo < spec.hi)) throw ConfigError("sweep needs lo < hi");
  if (spec.steps < 2) throw ConfigError("sweep needs at least two steps");
}

double sweep_point(const SweepSpec& spec, std::size_t i) {
  if (i + 1 == spec.steps) return spec.hi;
  return spec.lo + (spec.hi - spec.lo) * static_cast<double>(i) /
                       static_cast<double>(spec.steps - 1);
}

SweepResult run_sweep(const SweepSpec& spec) {
  validate_sweep(spec);
  const Kind kind = classify(spec);
  SweepResult out = prepare(spec, kind);
  std::vector<std::string> notes(spec.steps);
  const auto n = static_cast<long long>(spec.steps);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n; ++i) {
    evaluate_into(kind, spec, static_cast<std::size_t>(i), out, notes);
  }
  collect_notes(out, notes);
  return out;
}

SweepResult run_sweep_serial(const SweepSpec& spec) {
  validate_sweep(spec);
  const Kind kind = classify(spec);
  SweepResult out = prepare(spec, kind);
  std::vector<std::string> notes(spec.steps);
  for (std::size_t i = 0; i < spec.steps; ++i) evaluate_into(kind, spec, i, out, notes);
  collect_notes(out, notes);
  return out;
}

void set_thread_cap(int threads) {
  if (threads >= 1) omp_set_num_threads(threads);
}

void apply_thread_env() {
  const char* env = std::getenv("VISCO_IMPACT_THREADS");
  if (env == nullptr) return;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (end != env && *end == '\0' && n > 0) set_thread_cap(static_cast<int>(n));
}

}  // namespace visco
