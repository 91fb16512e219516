#include "visco/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "visco/errors.hpp"
#include "visco/maxwell.hpp"
#include "visco/numerics.hpp"

#ifndef VISCO_DATA_DIR
#define VISCO_DATA_DIR "data"
#endif

namespace visco {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMega = 1e6;
constexpr double kMilli = 1e-3;

void check_geometry(const SampleGeometry& g) {
  if (!(g.a > 0.0) || !(g.h > 0.0)) {
    throw DomainError("sample radius and thickness must be positive");
  }
}

double area(const SampleGeometry& g) { return kPi * g.a * g.a; }

/// Weights of the first derivative at z from the values at x[0..n) (Fornberg).
template <std::size_t N>
std::array<double, N> derivative_weights(const double* x, std::size_t n, double z) {
  std::array<double, N> d0{};
  std::array<double, N> d1{};
  double c1 = 1.0;
  double c4 = x[0] - z;
  d0[0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        d1[i] = c1 * (d0[i - 1] - c5 * d1[i - 1]) / c2;
        d0[i] = -c1 * c5 * d0[i - 1] / c2;
      }
      d1[j] = (c4 * d1[j] - d0[j]) / c3;
      d0[j] = c4 * d0[j] / c3;
    }
    c1 = c2;
  }
  return d1;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double relative_spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  double mean = 0.0;
  for (const double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  return (*hi - *lo) / std::abs(mean);
}

bool strictly_increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) return false;
  }
  return true;
}

std::string sequence(const std::vector<double>& v, double scale) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::ostringstream os;
    os.precision(4);
    os << v[i] / scale;
    s += (i ? ", " : "") + os.str();
  }
  return s + "}";
}

}  // namespace

StressStrain stress_strain(const Trajectory& traj, const SampleGeometry& geom) {
  check_geometry(geom);
  const double A = area(geom);
  StressStrain out;
  out.sigma.reserve(traj.size());
  out.eps.reserve(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out.sigma.push_back(traj.F[i] / A);
    out.eps.push_back(traj.x[i] / geom.h);
  }
  return out;
}

std::vector<double> differentiate(const std::vector<double>& t, const std::vector<double>& y) {
  const std::size_t n = t.size();
  if (y.size() != n || n < 2) throw DomainError("differentiate needs two equal-length series");
  constexpr std::size_t kStencil = 5;
  const std::size_t width = std::min(kStencil, n);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t start = std::min(i >= width / 2 ? i - width / 2 : 0, n - width);
    const auto w = derivative_weights<kStencil>(t.data() + start, width, t[i]);
    double d = 0.0;
    for (std::size_t j = 0; j < width; ++j) d += w[j] * y[start + j];
    out[i] = d;
  }
  return out;
}

std::vector<double> dynamic_modulus(const Trajectory& traj, const SampleGeometry& geom) {
  check_geometry(geom);
  if (traj.empty()) return {};
  const std::vector<double> rate =
      traj.Fdot.size() == traj.size() ? traj.Fdot : differentiate(traj.t, traj.F);
  const double scale = geom.h / area(geom);
  const double guard = kVelocityGuard * std::abs(traj.xdot.front());
  std::vector<double> out(traj.size(), kNaN);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    if (std::abs(traj.xdot[i]) >= guard) out[i] = scale * rate[i] / traj.xdot[i];
  }
  return out;
}

double maxwell_dynamic_modulus(const MaxwellParams& p, const SampleGeometry& geom, double t) {
  check_geometry(geom);
  const DerivedGroups d = derive_maxwell(p);
  const double r = d.zeta * d.omega0 / d.omega;
  const double c = std::cos(d.omega * t);
  const double s = std::sin(d.omega * t);
  const double vel = std::exp(-d.zeta * d.omega0 * t) * (c + r * s);
  if (std::abs(vel) < kVelocityGuard) {
    throw SingularityError("dynamic modulus undefined at t = " + std::to_string(t) +
                           ": velocity vanishes");
  }
  return geom.h / area(geom) * p.k * (c - r * s) / (c + r * s);
}

ModulusAtStress solve_e10(const MaxwellParams& p, const SampleGeometry& geom,
                          double sigma_target) {
  check_geometry(geom);
  if (!(sigma_target >= 0.0)) throw DomainError("target stress must be non-negative");
  const DerivedGroups d = derive_maxwell(p);
  if (sigma_target == 0.0) return {0.0, maxwell_dynamic_modulus(p, geom, 0.0)};
  const ImpactMetrics mt = mx_metrics(p);
  const double F_target = area(geom) * sigma_target;
  if (mt.F_M < F_target) {
    throw NoCrossingError("peak stress " + std::to_string(mt.F_M / area(geom) / kMega) +
                          " MPa stays below the target " +
                          std::to_string(sigma_target / kMega) + " MPa");
  }
  const double rhs = area(geom) * d.omega * sigma_target / (p.k * p.v0);
  auto f = [&](double t) {
    return std::exp(-d.zeta * d.omega0 * t) * std::sin(d.omega * t) - rhs;
  };
  const double t10 = numerics::solve_bracketed(f, 0.0, mt.t_M);
  return {t10, maxwell_dynamic_modulus(p, geom, t10)};
}

double energy_dissipation(double e_star) {
  if (!(e_star >= 0.0) || !(e_star <= 1.0)) {
    throw DomainError("restitution must lie in [0, 1], got " + std::to_string(e_star));
  }
  return 1.0 - e_star * e_star;
}

std::vector<ExperimentRecord> ingest_table(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.find_first_not_of(" \t\r") == std::string::npos) {
    throw ParseError("experiment table is empty", 1);
  }
  const std::vector<std::string> header = split_csv(line);
  const std::vector<std::string> expected = split_csv(kExperimentHeader);
  std::vector<std::size_t> index;
  for (const std::string& name : expected) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ParseError("missing column '" + name + "'", 1, name);
    index.push_back(static_cast<std::size_t>(it - header.begin()));
  }

  std::vector<ExperimentRecord> out;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::vector<std::string> cells = split_csv(line);
    if (cells.size() != header.size()) {
      throw ParseError("row has " + std::to_string(cells.size()) + " fields, header has " +
                           std::to_string(header.size()),
                       row, cells.size() < header.size() ? header[cells.size()] : std::string());
    }
    double v[13];
    for (std::size_t c = 0; c < expected.size(); ++c) {
      try {
        v[c] = parse_double(cells[index[c]]);
      } catch (const ParseError& e) {
        throw ParseError(std::string(e.what()) + " in column '" + expected[c] + "'", row,
                         expected[c]);
      }
    }
    ExperimentRecord r;
    r.h0 = v[0] * kMilli;
    r.v0 = v[1];
    r.E_max = v[2] * kMega;
    r.E_max_sd = v[3] * kMega;
    r.E_10 = v[4] * kMega;
    r.E_10_sd = v[5] * kMega;
    r.sigma_max = v[6] * kMega;
    r.sigma_max_sd = v[7] * kMega;
    r.eps_max = v[8];
    r.eps_max_sd = v[9];
    r.e_star = v[10];
    r.e_star_sd = v[11];
    r.delta_m = v[12];
    const double v_drop = std::sqrt(2.0 * kStandardGravity * r.h0);
    r.v0_consistent = std::abs(r.v0 - v_drop) <= kVelocityTolerance * v_drop;
    out.push_back(r);
  }
  if (out.empty()) throw ParseError("experiment table has no data rows", row);
  return out;
}

std::vector<ExperimentRecord> ingest_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open experiment table '" + path + "'");
  return ingest_table(in);
}

void write_table(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  out << kExperimentHeader << '\n';
  for (const ExperimentRecord& r : records) {
    const double cells[13] = {r.h0 / kMilli,      r.v0,
                              r.E_max / kMega,    r.E_max_sd / kMega,
                              r.E_10 / kMega,     r.E_10_sd / kMega,
                              r.sigma_max / kMega, r.sigma_max_sd / kMega,
                              r.eps_max,          r.eps_max_sd,
                              r.e_star,           r.e_star_sd,
                              r.delta_m};
    for (int c = 0; c < 13; ++c) out << (c ? "," : "") << format_double(cells[c]);
    out << '\n';
  }
}

std::string bundled_table_path() { return std::string(VISCO_DATA_DIR) + "/table1.csv"; }

LinearityReport linearity_report(std::vector<ExperimentRecord> records, double tolerance) {
  if (records.size() < 2) throw DomainError("linearity report needs at least two records");
  std::stable_sort(records.begin(), records.end(),
                   [](const auto& a, const auto& b) { return a.v0 < b.v0; });
  LinearityReport rep;
  std::vector<double> e_star, E_max, E_10, sigma_per_v0;
  for (const ExperimentRecord& r : records) {
    rep.v0.push_back(r.v0);
    rep.stiffness_ratio.push_back(r.sigma_max / r.eps_max);
    rep.energy_loss.push_back(energy_dissipation(r.e_star));
    e_star.push_back(r.e_star);
    E_max.push_back(r.E_max);
    E_10.push_back(r.E_10);
    sigma_per_v0.push_back(r.sigma_max / r.v0);
  }
  rep.ratio_increasing = strictly_increasing(rep.stiffness_ratio);

  rep.verdicts.push_back({"e_* independent of v0", "e_* = " + sequence(e_star, 1.0),
                          relative_spread(e_star) < tolerance});
  rep.verdicts.push_back({"E_max independent of v0", "E_max [MPa] = " + sequence(E_max, kMega),
                          relative_spread(E_max) < tolerance});
  rep.verdicts.push_back({"sigma_max/eps_max independent of v0",
                          "sigma_max/eps_max [MPa] = " + sequence(rep.stiffness_ratio, kMega),
                          relative_spread(rep.stiffness_ratio) < tolerance});
  rep.verdicts.push_back({"sigma_max proportional to v0",
                          "sigma_max/v0 [MPa s/m] = " + sequence(sigma_per_v0, kMega),
                          relative_spread(sigma_per_v0) < tolerance});
  rep.verdicts.push_back({"E_10 increases with v0", "E_10 [MPa] = " + sequence(E_10, kMega),
                          strictly_increasing(E_10)});
  return rep;
}

}  // namespace visco
