#include "canodual/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "canodual/canonical.hpp"
#include "canodual/errors.hpp"
#include "canodual/log.hpp"

namespace canodual {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    out.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
  }
  return out;
}

OracleConfig OracleConfig::defaults(const ProblemParams& p) {
  const double ratio = 2.0 * std::fabs(p.w) / std::max(std::fabs(p.y), 1e-12);
  const double reach = 8.0 * p.alpha *
                       std::max(1.0, std::sqrt(2.0 * std::log(std::max(ratio, 1.0 + 1e-9))));
  const Interval wells{p.x - reach, p.x + reach};
  const Interval origin{-2.0 * std::fabs(p.x) - 5.0, 2.0 * std::fabs(p.x) + 5.0};
  return {Interval::hull(wells, origin), 200'001, 1e-12};
}

namespace {

double bisect_gradient(const ProblemParams& p, const RadialKernel& kernel,
                       double a, double b, double fa, double tol) {
  for (int iter = 0; iter < 200; ++iter) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double fm = primal_gradient(p, kernel, m);
    if (fm == 0.0) return m;
    if ((fa < 0.0) != (fm < 0.0)) {
      b = m;
    } else {
      a = m;
      fa = fm;
    }
    if (b - a <= tol) break;
  }
  return 0.5 * (a + b);
}

std::vector<double> scan_gradient_roots(const ProblemParams& p,
                                        const RadialKernel& kernel,
                                        const OracleConfig& cfg, bool* near_edge) {
  const int n = cfg.grid_n;
  const double lo = cfg.c_range.lo;
  const double step = cfg.c_range.width() / (n - 1);
  std::vector<double> roots;
  double prev_c = lo;
  double prev_g = primal_gradient(p, kernel, lo);
  for (int i = 1; i < n; ++i) {
    const double c = lo + step * i;
    const double g = primal_gradient(p, kernel, c);
    if ((prev_g < 0.0) != (g < 0.0)) {
      roots.push_back(bisect_gradient(p, kernel, prev_c, c, prev_g, cfg.refine_tol));
    }
    prev_c = c;
    prev_g = g;
  }
  *near_edge = false;
  for (double r : roots) {
    if (r < lo + 2.0 * step || r > cfg.c_range.hi - 2.0 * step) *near_edge = true;
  }
  return roots;
}

}  // namespace

std::vector<OraclePoint> primal_criticals_bruteforce(const ProblemParams& p,
                                                     const RadialKernel& kernel,
                                                     const OracleConfig& cfg) {
  if (!(p.beta > 0.0) && p.w != 0.0) {
    throw DomainError("oracle needs beta > 0 for a coercive objective");
  }
  if (cfg.grid_n < 1001 || cfg.grid_n % 2 == 0) {
    throw DomainError("oracle grid_n must be odd and >= 1001");
  }

  OracleConfig work = cfg;
  bool near_edge = false;
  std::vector<double> roots = scan_gradient_roots(p, kernel, work, &near_edge);
  if (near_edge) {
    log_info("oracle critical point near range edge; widening once");
    const double pad = 0.5 * work.c_range.width();
    work.c_range = {work.c_range.lo - pad, work.c_range.hi + pad};
    roots = scan_gradient_roots(p, kernel, work, &near_edge);
  }

  std::sort(roots.begin(), roots.end());
  std::vector<OraclePoint> out;
  for (double c : roots) {
    if (!out.empty() && std::fabs(c - out.back().c) <= 1e-8) continue;
    OraclePoint pt;
    pt.c = c;
    pt.value = primal_value(p, kernel, c);
    pt.hessian = primal_hessian(p, kernel, c);
    pt.kind = classify_by_second_derivative(pt.hessian, pt.value);
    out.push_back(pt);
  }
  return out;
}

GapAuditReport duality_gap_audit(const ProblemParams& p, const RadialKernel& kernel,
                                 std::span<const DualPointSample> dual_points,
                                 std::span<const OraclePoint> oracle_points) {
  GapAuditReport report;
  std::vector<bool> consumed(oracle_points.size(), false);
  bool all_ok = true;

  for (const DualPointSample& d : dual_points) {
    size_t best = oracle_points.size();
    double best_dist = 1e-6;
    for (size_t i = 0; i < oracle_points.size(); ++i) {
      const double dist = std::fabs(oracle_points[i].c - d.c);
      if (dist <= best_dist) {
        best_dist = dist;
        best = i;
      }
    }
    if (best == oracle_points.size()) {
      report.unmatched_dual_sigmas.push_back(d.sigma);
      if (d.expects_match) all_ok = false;
      continue;
    }
    consumed[best] = true;
    GapMatch m;
    m.sigma = d.sigma;
    m.dual_c = d.c;
    m.oracle_c = oracle_points[best].c;
    m.pd_value = d.pd_value;
    m.p_value = primal_value(p, kernel, d.c);
    m.value_ok = std::fabs(m.p_value - m.pd_value) <= 1e-8 * (1.0 + std::fabs(m.pd_value));
    if (!m.value_ok) all_ok = false;
    report.matches.push_back(m);
  }

  for (size_t i = 0; i < oracle_points.size(); ++i) {
    if (!consumed[i]) {
      report.unmatched_oracle_centers.push_back(oracle_points[i].c);
      all_ok = false;
    }
  }
  report.agrees = all_ok;
  return report;
}

double conjugate_roundtrip(const RadialKernel& kernel, double w,
                           std::span<const double> eps_grid) {
  if (eps_grid.empty()) return 0.0;
  const double eps_hi = *std::max_element(eps_grid.begin(), eps_grid.end());
  // tau samples parameterized through the duality map over a padded eps range;
  // the supremum location is searched, never assumed.
  const int n = 40'001;
  std::vector<double> taus;
  taus.reserve(n);
  for (double e : linspace(0.0, eps_hi + 2.0, n)) {
    taus.push_back(w * kernel.phi_prime(e));
  }
  double worst = 0.0;
  for (double eps : eps_grid) {
    double best = -std::numeric_limits<double>::infinity();
    for (double tau : taus) {
      const double candidate = tau * eps - u_conjugate(kernel, w, tau);
      if (candidate > best) best = candidate;
    }
    const double err = std::fabs(best - w * kernel.phi(eps));
    if (err > worst) worst = err;
  }
  return worst;
}

double v_conjugate_roundtrip(double y, Interval sigma_window, int n) {
  const double pad = 0.5 * (1.0 + sigma_window.width());
  const std::vector<double> sigmas =
      linspace(sigma_window.lo - pad, sigma_window.hi + pad, 60'001);
  double worst = 0.0;
  for (double s : linspace(sigma_window.lo, sigma_window.hi, n)) {
    const double xi = y + s;
    double best = -std::numeric_limits<double>::infinity();
    for (double sigma : sigmas) {
      const double candidate = xi * sigma - v_conjugate(sigma, y);
      if (candidate > best) best = candidate;
    }
    const double err = std::fabs(best - 0.5 * (xi - y) * (xi - y));
    if (err > worst) worst = err;
  }
  return worst;
}

}  // namespace canodual
