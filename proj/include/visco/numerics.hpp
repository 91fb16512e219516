#pragma once

// Scalar root finding and extremum search shared by the closed-form models.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>

#include <boost/math/tools/toms748_solve.hpp>

namespace visco::numerics {

/// Root of f in [lo, hi] given f(lo), f(hi) of opposite sign (or zero).
/// Converges to a few ulps of the root.
template <class F>
double solve_bracketed(F&& f, double lo, double hi, double f_lo, double f_hi) {
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw std::invalid_argument("solve_bracketed: root is not bracketed");
  }
  std::uintmax_t max_iter = 200;
  const boost::math::tools::eps_tolerance<double> tol(std::numeric_limits<double>::digits - 3);
  auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi, tol, max_iter);
  return 0.5 * (a + b);
}

template <class F>
double solve_bracketed(F&& f, double lo, double hi) {
  return solve_bracketed(f, lo, hi, f(lo), f(hi));
}

/// Golden-section search for the minimum of a unimodal f on [lo, hi].
/// Stops when the bracket is narrower than tol.
template <class F>
double golden_section_min(F&& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

/// Scan grid: cells of width `fine` up to time `split`, then `coarse`.
struct ScanGrid {
  double fine = 0.0;
  double split = 0.0;
  double coarse = 0.0;

  static ScanGrid uniform(double step) { return {step, 0.0, step}; }
};

/// First time in (t0, t_end] at which f drops from positive to non-positive.
///
/// f is scanned on the grid. Between two positive grid values a sign change
/// can hide inside a shallow dip, so whenever df goes from negative to
/// positive across a cell the local minimum is located and tested as well.
/// Values of f at or below zero before f has been positive (e.g. f(t0) = 0)
/// are skipped.
template <class F, class DF>
std::optional<double> first_downcrossing(F&& f, DF&& df, double t0, double t_end,
                                         const ScanGrid& grid) {
  if (!(grid.fine > 0.0) || !(grid.coarse > 0.0) || !(t_end > t0)) {
    throw std::invalid_argument("first_downcrossing: bad grid");
  }
  bool seen_positive = false;
  double a = t0;
  double fa = f(a);
  double dfa = df(a);
  if (fa > 0.0) seen_positive = true;
  const double split = std::clamp(grid.split, t0, t_end);
  const auto n_fine = static_cast<std::int64_t>(std::ceil((split - t0) / grid.fine));
  const auto n_coarse = static_cast<std::int64_t>(std::ceil((t_end - split) / grid.coarse));
  for (std::int64_t i = 1; i <= n_fine + n_coarse; ++i) {
    double b;
    if (i < n_fine) {
      b = t0 + static_cast<double>(i) * grid.fine;
    } else if (i == n_fine) {
      b = split;
    } else if (i < n_fine + n_coarse) {
      b = split + static_cast<double>(i - n_fine) * grid.coarse;
    } else {
      b = t_end;
    }
    const double fb = f(b);
    const double dfb = df(b);
    if (seen_positive) {
      if (fa > 0.0 && fb <= 0.0) return solve_bracketed(f, a, b, fa, fb);
      if (fa > 0.0 && fb > 0.0 && dfa < 0.0 && dfb > 0.0) {
        const double t_min = solve_bracketed(df, a, b, dfa, dfb);
        const double f_min = f(t_min);
        if (f_min <= 0.0) return solve_bracketed(f, a, t_min, fa, f_min);
      }
    } else if (fb > 0.0) {
      seen_positive = true;
    }
    a = b;
    fa = fb;
    dfa = dfb;
  }
  return std::nullopt;
}

template <class F, class DF>
std::optional<double> first_downcrossing(F&& f, DF&& df, double t0, double t_end, double step) {
  return first_downcrossing(f, df, t0, t_end, ScanGrid::uniform(step));
}

}  // namespace visco::numerics
