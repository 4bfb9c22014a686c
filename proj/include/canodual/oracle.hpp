#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "canodual/classification.hpp"
#include "canodual/interval.hpp"
#include "canodual/primal.hpp"

namespace canodual {

/// Brute-force search configuration for the primal critical-point oracle.
struct OracleConfig {
  Interval c_range;
  int grid_n = 200'001;      // odd, >= 1001
  double refine_tol = 1e-12;

  /// Range covering the data-fit wells around x and the regularization well
  /// around 0, with margin.
  static OracleConfig defaults(const ProblemParams& p);
};

/// A primal critical point located by grid scan + bisection on the analytic
/// gradient (deliberately not Newton: the oracle stays independent of the
/// analytic hessian it is used to audit).
struct OraclePoint {
  double c = 0.0;
  double value = 0.0;
  double hessian = 0.0;
  ExtremumKind kind = ExtremumKind::Degenerate;
};

std::vector<OraclePoint> primal_criticals_bruteforce(const ProblemParams& p,
                                                     const RadialKernel& kernel,
                                                     const OracleConfig& cfg);

/// Minimal view of a dual critical point needed by the gap audit; the solver
/// converts its richer records into this shape.
struct DualPointSample {
  double sigma = 0.0;
  double c = 0.0;         // recovered center F/G
  double pd_value = 0.0;
  bool pseudo = false;    // sigma == -y/2
  bool expects_match = true;  // false only for the pseudo point off (critf)
};

struct GapMatch {
  double sigma = 0.0;
  double dual_c = 0.0;
  double oracle_c = 0.0;
  double pd_value = 0.0;
  double p_value = 0.0;
  bool value_ok = false;
};

struct GapAuditReport {
  std::vector<GapMatch> matches;
  std::vector<double> unmatched_dual_sigmas;    // pseudo point expected here
  std::vector<double> unmatched_oracle_centers;
  bool agrees = false;
};

/// Matches each dual point expecting a primal partner to an oracle critical
/// point within 1e-6 in c and requires |P - P^d| <= 1e-8 (1 + |P^d|).
GapAuditReport duality_gap_audit(const ProblemParams& p, const RadialKernel& kernel,
                                 std::span<const DualPointSample> dual_points,
                                 std::span<const OraclePoint> oracle_points);

/// Max over n interior points of the relative mismatch between dfn and the
/// central difference of fn, step h = 1e-6 (1 + |x|).
template <typename F, typename DF>
double fd_check(F&& fn, DF&& dfn, Interval iv, int n) {
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = iv.lo + (i + 1) * iv.width() / (n + 1);
    const double h = 1e-6 * (1.0 + std::fabs(x));
    const double estimate = (fn(x + h) - fn(x - h)) / (2.0 * h);
    const double analytic = dfn(x);
    const double err = std::fabs(analytic - estimate) / (1.0 + std::fabs(analytic));
    if (err > worst) worst = err;
  }
  return worst;
}

/// Same idea against the central second difference of fn, step 5e-4 (1 + |x|).
template <typename F, typename DDF>
double fd2_check(F&& fn, DDF&& ddfn, Interval iv, int n) {
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = iv.lo + (i + 1) * iv.width() / (n + 1);
    const double h = 5e-4 * (1.0 + std::fabs(x));
    const double estimate = (fn(x + h) - 2.0 * fn(x) + fn(x - h)) / (h * h);
    const double analytic = ddfn(x);
    const double err = std::fabs(analytic - estimate) / (1.0 + std::fabs(analytic));
    if (err > worst) worst = err;
  }
  return worst;
}

/// Re-conjugates U* over a fine tau-grid and compares against U = w phi on
/// eps_grid; returns the max absolute error.
double conjugate_roundtrip(const RadialKernel& kernel, double w,
                           std::span<const double> eps_grid);

/// Same for the quadratic pair V / V*; xi values are taken as y + sigma over
/// the given window.
double v_conjugate_roundtrip(double y, Interval sigma_window, int n);

std::vector<double> linspace(double lo, double hi, int n);

}  // namespace canodual
