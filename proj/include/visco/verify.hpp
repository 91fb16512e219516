#pragma once

// Analytic-versus-oracle verification suites behind `visco_impact verify`.

#include <iosfwd>
#include <string>
#include <vector>

#include "visco/oracle.hpp"

namespace visco {

struct SuiteResult {
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<SuiteResult> suites;
  bool passed() const;
};

struct VerifyOptions {
  /// Factor applied to the closed-form restitution values before comparison.
  /// 1 means no fault.
  double restitution_fault = 1.0;
};

VerifyReport run_verification(const VerifyOptions& options = {});

/// JSON report: {"passed": bool, "suites": [{name, max_error, tolerance, passed, detail}]}.
void write_verify_report(std::ostream& out, const VerifyReport& report);

/// Step-halving probe of the oracle: with e(h) the restitution at step h,
/// returns (e(h) - e(h/2)) / (e(h/2) - e(h/4)), which tends to 16 for a
/// fourth-order scheme. `tc` receives the same ratio for the contact duration.
double oracle_step_ratio(const RelaxationKernel& kernel, double m, double v0, double dt_scaled,
                         double* tc = nullptr);

}  // namespace visco
