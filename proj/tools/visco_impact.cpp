// visco_impact: simulate, sweep, verify, biphasic and analyze subcommands.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "visco/analysis.hpp"
#include "visco/biphasic.hpp"
#include "visco/errors.hpp"
#include "visco/io.hpp"
#include "visco/kelvin_voigt.hpp"
#include "visco/maxwell.hpp"
#include "visco/oracle.hpp"
#include "visco/standard_solid.hpp"
#include "visco/sweep.hpp"
#include "visco/verify.hpp"

namespace {

using namespace visco;

enum Exit { kOk = 0, kIo = 1, kDomain = 2, kPlastic = 3, kVerify = 4 };

struct Options {
  std::string model;
  std::string params;
  std::string kernel;
  std::string layer;
  std::string out;
  std::string data;
  std::string sweep;
  std::vector<std::string> fixed;
  bool gravity = false;
  bool serial = false;
  bool inject_fault = false;
  std::optional<double> dt;
  std::optional<double> horizon;
  std::optional<double> mass;
  std::optional<double> v0;
  std::optional<double> g;
  std::size_t samples = kDefaultSamples;
};

/// Opens --out, or stdout when it is empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }
  void close(const std::string& path) {
    if (file_.is_open()) {
      file_.close();
      if (!file_) throw std::runtime_error("write to '" + path + "' failed");
    }
  }

 private:
  std::ofstream file_;
};

void print_metrics(const ImpactMetrics& m) {
  std::cerr << "t_c    = " << format_double(m.t_c) << " s\n"
            << "e_star = " << format_double(m.e_star) << "\n"
            << "t_m    = " << format_double(m.t_m) << " s\n"
            << "x_m    = " << format_double(m.x_m) << " m\n"
            << "t_M    = " << format_double(m.t_M) << " s\n"
            << "F_M    = " << format_double(m.F_M) << " N\n";
  if (m.x_M) std::cerr << "x_M    = " << format_double(*m.x_M) << " m\n";
  if (m.F_m) std::cerr << "F_m    = " << format_double(*m.F_m) << " N\n";
}

void emit_trajectory(const Options& o, const Trajectory& traj) {
  Output out(o.out);
  write_trajectory_csv(out.get(), traj);
  out.close(o.out);
}

OracleOptions oracle_options(const Options& o) {
  OracleOptions opt;
  opt.dt_scaled = o.dt;
  opt.horizon_scaled = o.horizon;
  return opt;
}

double gravity_of(const Options& o, double from_params) {
  if (o.g) return *o.g;
  return from_params > 0.0 ? from_params : kStandardGravity;
}

int cmd_simulate(const Options& o) {
  Trajectory traj;
  ImpactMetrics metrics;
  if (o.model == "kv") {
    KelvinVoigtParams p = parse_kv_params(read_text_file(o.params));
    if (o.gravity) {
      p.g = gravity_of(o, p.g);
      traj = kv_drop_trajectory(p, o.samples);
      metrics = kv_drop_metrics(p);
    } else {
      traj = kv_trajectory(p, o.samples);
      metrics = kv_metrics(p);
    }
  } else if (o.model == "maxwell") {
    MaxwellParams p = parse_maxwell_params(read_text_file(o.params));
    if (o.gravity) {
      p.g = gravity_of(o, p.g);
      traj = mx_drop_trajectory(p, o.samples);
      metrics = mx_drop_metrics(p);
    } else {
      traj = mx_trajectory(p, o.samples);
      metrics = mx_metrics(p);
    }
  } else if (o.model == "sls") {
    if (o.gravity) throw ConfigError("the sls model has no drop-weight variant");
    const StandardSolidParams p = parse_sls_params(read_text_file(o.params));
    StandardSolidRun run = sls_simulate(p, o.samples, oracle_options(o));
    if (run.used_oracle) {
      std::cerr << "note: discriminant D = " << format_double(run.discriminant)
                << " <= 0, closed form unavailable; used the numerical oracle\n";
    }
    traj = std::move(run.trajectory);
    metrics = run.metrics;
  } else if (o.model == "oracle") {
    if (!o.mass || !o.v0) throw ConfigError("the oracle model needs --mass and --v0");
    const RelaxationKernel kernel = parse_kernel(read_text_file(o.kernel));
    if (!kernel.monotone()) {
      std::cerr << "warning: relaxation function increases somewhere; not a physical kernel\n";
    }
    const double g = o.gravity ? gravity_of(o, 0.0) : 0.0;
    OracleRun run = integrate_impact_with_gravity(kernel, *o.mass, *o.v0, g, oracle_options(o));
    traj = std::move(run.trajectory);
    metrics = run.metrics;
  } else {
    throw ConfigError("unknown model '" + o.model + "'");
  }
  emit_trajectory(o, traj);
  print_metrics(metrics);
  return kOk;
}

int cmd_sweep(const Options& o) {
  SweepSpec spec = parse_sweep_spec(o.sweep, o.model);
  for (const std::string& f : o.fixed) {
    const auto eq = f.find('=');
    if (eq == std::string::npos) throw ConfigError("--fixed expects name=value, got '" + f + "'");
    spec.fixed[f.substr(0, eq)] = parse_double(f.substr(eq + 1));
  }
  validate_sweep(spec);
  const SweepResult res = o.serial ? run_sweep_serial(spec) : run_sweep(spec);
  Output out(o.out);
  std::ostream& os = out.get();
  for (std::size_t c = 0; c < res.columns.size(); ++c) os << (c ? "," : "") << res.columns[c];
  os << '\n';
  for (const auto& row : res.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_double(row[c]);
    os << '\n';
  }
  out.close(o.out);
  for (const std::string& n : res.notes) std::cerr << "skipped " << n << '\n';
  return res.failures ? kDomain : kOk;
}

int cmd_verify(const Options& o) {
  VerifyOptions vo;
  if (o.inject_fault) vo.restitution_fault = 1.0 + 1e-4;
  const VerifyReport rep = run_verification(vo);
  Output out(o.out);
  write_verify_report(out.get(), rep);
  out.close(o.out);
  for (const SuiteResult& s : rep.suites) {
    std::cerr << (s.passed ? "PASS " : "FAIL ") << s.name << "  max_error=" << s.max_error
              << "  tolerance=" << s.tolerance << '\n';
  }
  return rep.passed() ? kOk : kVerify;
}

int cmd_biphasic(const Options& o) {
  if (!o.mass || !o.v0) throw ConfigError("biphasic needs --mass and --v0");
  const BiphasicLayer layer = parse_layer(read_text_file(o.layer));
  if (layer.thickness_warning()) {
    std::cerr << "warning: h/a = " << layer.h() / layer.a()
              << " exceeds 0.2; thin-layer asymptotics may be inaccurate\n";
  }
  const EquivalentMaxwell eq = equivalent_maxwell(layer);
  const ValidityWindow w = validity_window(layer);
  const double zeta = biphasic_loss_factor(layer, *o.mass);
  std::cerr << "k      = " << format_double(eq.k) << " N/m\n"
            << "tau_R  = " << format_double(eq.tau_R) << " s\n"
            << "zeta   = " << format_double(zeta) << "\n"
            << "tau_D  = " << format_double(w.tau_D) << " s\n"
            << "window = " << format_double(w.usable) << " s\n";

  Trajectory traj;
  ImpactMetrics metrics;
  if (zeta < 1.0) {
    const MaxwellParams p = reduce_to_maxwell(layer, *o.mass, *o.v0);
    traj = mx_trajectory(p, o.samples);
    metrics = mx_metrics(p);
  } else {
    std::cerr << "warning: zeta >= 1, closed form unavailable; used the numerical oracle\n";
    const RelaxationKernel kernel = RelaxationKernel::maxwell(eq.k, eq.k * eq.tau_R);
    OracleRun run = integrate_impact(kernel, *o.mass, *o.v0, oracle_options(o));
    traj = std::move(run.trajectory);
    metrics = run.metrics;
  }
  if (!o.out.empty()) emit_trajectory(o, traj);
  print_metrics(metrics);
  if (metrics.t_c > w.usable) {
    std::cerr << "warning: contact duration exceeds the validity window\n";
  }
  return kOk;
}

int cmd_analyze(const Options& o) {
  const std::string path = o.data.empty() ? bundled_table_path() : o.data;
  const std::vector<ExperimentRecord> records = ingest_table(path);
  const LinearityReport rep = linearity_report(records);
  Output out(o.out);
  std::ostream& os = out.get();
  os << "v0_ms,sigmax_over_epsmax_MPa,energy_loss,v0_consistent\n";
  std::vector<ExperimentRecord> sorted = records;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.v0 < b.v0; });
  for (std::size_t i = 0; i < rep.v0.size(); ++i) {
    os << format_double(rep.v0[i]) << ',' << format_double(rep.stiffness_ratio[i] / 1e6) << ','
       << format_double(rep.energy_loss[i]) << ',' << (sorted[i].v0_consistent ? 1 : 0) << '\n';
  }
  out.close(o.out);
  for (const ExperimentRecord& r : records) {
    if (!r.v0_consistent) {
      std::cerr << "warning: v0 = " << r.v0 << " m/s inconsistent with drop height "
                << r.h0 * 1e3 << " mm\n";
    }
  }
  std::cerr << "sigma_max/eps_max "
            << (rep.ratio_increasing ? "increases with v0 (nonlinear response)"
                                     : "does not increase strictly with v0")
            << '\n';
  for (const Verdict& v : rep.verdicts) {
    std::cerr << (v.holds ? "PASS " : "FAIL ") << v.prediction << ": " << v.observed << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_env();
  CLI::App app{"Linear viscoelastic impact models"};
  app.require_subcommand(1);
  Options o;

  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", o.out, "Output file (stdout if omitted)"); };
  auto add_solver = [&](CLI::App* sub) {
    sub->add_option("--dt", o.dt, "Oracle step in scaled time");
    sub->add_option("--horizon", o.horizon, "Oracle horizon in scaled time");
  };

  auto* sim = app.add_subcommand("simulate", "Trajectory CSV and metrics of one impact");
  sim->add_option("model", o.model, "kv | maxwell | sls | oracle")->required();
  sim->add_option("--params", o.params, "Parameter JSON (kv, maxwell, sls)");
  sim->add_option("--kernel", o.kernel, "Relaxation kernel JSON (oracle)");
  sim->add_flag("--gravity", o.gravity, "Drop-weight impact with gravity");
  sim->add_option("--g", o.g, "Gravitational acceleration for --gravity");
  sim->add_option("--mass", o.mass, "Impactor mass (oracle)");
  sim->add_option("--v0", o.v0, "Impact velocity (oracle)");
  sim->add_option("--samples", o.samples, "Trajectory samples for closed forms");
  add_out(sim);
  add_solver(sim);

  auto* sweep = app.add_subcommand("sweep", "Scaled metrics over a parameter grid");
  sweep->add_option("--model", o.model, "kv | maxwell | sls")->required();
  sweep->add_option("--sweep", o.sweep, "param:lo:hi:steps")->required();
  sweep->add_option("--fixed", o.fixed, "name=value held fixed (repeatable)");
  sweep->add_flag("--serial", o.serial, "Evaluate on one thread");
  add_out(sweep);

  auto* verify = app.add_subcommand("verify", "Analytic-versus-oracle verification suites");
  verify->add_flag("--inject-fault", o.inject_fault, "Perturb the closed forms (must fail)")->group("");
  add_out(verify);

  auto* bi = app.add_subcommand("biphasic", "Equivalent Maxwell element of a thin layer");
  bi->add_option("--layer", o.layer, "Layer JSON")->required();
  bi->add_option("--mass", o.mass, "Impactor mass")->required();
  bi->add_option("--v0", o.v0, "Impact velocity")->required();
  bi->add_option("--samples", o.samples, "Trajectory samples");
  add_out(bi);
  add_solver(bi);

  auto* an = app.add_subcommand("analyze", "Linearity verdicts for a drop-test table");
  an->add_option("--data", o.data, "Experiment CSV (bundled table if omitted)");
  add_out(an);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kIo;
  }

  try {
    if (*sim) return cmd_simulate(o);
    if (*sweep) return cmd_sweep(o);
    if (*verify) return cmd_verify(o);
    if (*bi) return cmd_biphasic(o);
    if (*an) return cmd_analyze(o);
  } catch (const PlasticImpactError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kPlastic;
  } catch (const NoSeparationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kPlastic;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what();
    if (e.row() > 0) std::cerr << " (row " << e.row() << ")";
    if (!e.column().empty()) std::cerr << " [column " << e.column() << "]";
    std::cerr << '\n';
    return kIo;
  } catch (const ImpactError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  }
  return kOk;
}
