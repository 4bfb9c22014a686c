#include "canodual/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "canodual/errors.hpp"
#include "canodual/kernel.hpp"
#include "canodual/log.hpp"

namespace canodual {

std::string to_string(Region region) {
  switch (region) {
    case Region::PlusSharp: return "s_plus_sharp";
    case Region::PlusFlat: return "s_plus_flat";
    case Region::Minus: return "s_minus";
    case Region::PseudoOnly: return "pseudo_only";
    case Region::Boundary: return "boundary";
  }
  return "unknown";
}

namespace {

constexpr double kDedupeRadius = 1e-9;
constexpr double kPseudoBand = 1e-8;     // |2 sigma + y| below this is sigma_f's
constexpr double kBoundaryBand = 1e-3;   // in units of y, for the Boundary tag

double residual_slope(const DualLandscape& L, double t) {
  // dA/dsigma = (x - F/G)^2 (2 sigma + y) / (alpha^4 G) + 1/t
  const ProblemParams& p = L.params();
  const double inv_a2 = 1.0 / (p.alpha * p.alpha);
  const double miss = p.x - L.recover_center_off(t);
  const double lever = 2.0 * t - p.y;
  return miss * miss * lever * inv_a2 * inv_a2 / L.center_curvature_off(t) + 1.0 / t;
}

double polish_root(const DualLandscape& L, double t, double lo, double hi) {
  for (int i = 0; i < 3; ++i) {
    const double a = L.criticality_residual_off(t);
    const double da = residual_slope(L, t);
    if (da == 0.0) break;
    const double next = t - a / da;
    if (!(next > lo) || !(next < hi)) break;
    if (std::fabs(L.criticality_residual_off(next)) >= std::fabs(a)) break;
    t = next;
  }
  return t;
}

double bisect_residual(const DualLandscape& L, double a, double b, double fa) {
  const double lo = a, hi = b;
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double fm = L.criticality_residual_off(m);
    if (fm == 0.0) return m;
    if ((fa < 0.0) != (fm < 0.0)) {
      b = m;
    } else {
      a = m;
      fa = fm;
    }
    if (b - a <= 1e-13) break;
  }
  return polish_root(L, 0.5 * (a + b), lo, hi);
}

// Bisection on u = ln t for boundary-zone roots; keeps full relative
// precision at offsets far below the spacing of doubles around sigma = -y.
double bisect_residual_log(const DualLandscape& L, double ua, double ub, double fa) {
  for (int i = 0; i < 300; ++i) {
    const double um = 0.5 * (ua + ub);
    if (um <= ua || um >= ub) break;
    const double fm = L.criticality_residual_off(std::exp(um));
    if (fm == 0.0) return std::exp(um);
    if ((fa < 0.0) != (fm < 0.0)) {
      ub = um;
    } else {
      ua = um;
      fa = fm;
    }
    if (ub - ua <= 1e-13) break;
  }
  const double t = std::exp(0.5 * (ua + ub));
  return polish_root(L, t, std::exp(ua), std::exp(ub));
}

void scan_uniform(const DualLandscape& L, double lo, double hi, int samples,
                  std::vector<double>* roots) {
  if (!(lo < hi)) return;
  const double step = (hi - lo) / samples;
  std::vector<double> value(static_cast<size_t>(samples) + 1);
  for (int i = 0; i <= samples; ++i) {
    value[i] = L.criticality_residual_off(lo + step * i);
  }
  for (int i = 0; i < samples; ++i) {
    if ((value[i] < 0.0) != (value[i + 1] < 0.0)) {
      roots->push_back(bisect_residual(L, lo + step * i, lo + step * (i + 1), value[i]));
    }
  }
  // Near-miss pass: a root pair tighter than the grid leaves no sign change,
  // only a dip of |A|. Refine every cell pair around a local minimum of |A|
  // (and the end cells) at 512x.
  std::vector<int> candidates{0, samples - 1};
  for (int i = 1; i < samples; ++i) {
    if (std::fabs(value[i]) <= std::fabs(value[i - 1]) &&
        std::fabs(value[i]) <= std::fabs(value[i + 1])) {
      candidates.push_back(i);
    }
  }
  for (int i : candidates) {
    const double a = lo + step * std::max(0, i - 1);
    const double b = lo + step * std::min(samples, i + 1);
    const int fine = 512;
    double prev_t = a;
    double prev_v = L.criticality_residual_off(a);
    for (int k = 1; k <= fine; ++k) {
      const double t = a + (b - a) * k / fine;
      const double v = L.criticality_residual_off(t);
      if ((prev_v < 0.0) != (v < 0.0)) {
        const double root = bisect_residual(L, prev_t, t, prev_v);
        bool fresh = true;
        for (double r : *roots) {
          if (std::fabs(r - root) <= kDedupeRadius) fresh = false;
        }
        if (fresh) roots->push_back(root);
      }
      prev_t = t;
      prev_v = v;
    }
  }
}

Region region_of(const DualLandscape& L, double t, bool pseudo) {
  if (pseudo) return Region::PseudoOnly;
  const ProblemParams& p = L.params();
  if (t < kBoundaryBand * p.y) return Region::Boundary;
  if (L.center_curvature_off(t) < 0.0) return Region::Minus;
  return t > 0.5 * p.y ? Region::PlusSharp : Region::PlusFlat;
}

ExtremumKind opposite(ExtremumKind kind) {
  if (kind == ExtremumKind::Min) return ExtremumKind::Max;
  if (kind == ExtremumKind::Max) return ExtremumKind::Min;
  return kind;
}

bool determinate(ExtremumKind kind) {
  return kind == ExtremumKind::Min || kind == ExtremumKind::Max;
}

}  // namespace

std::vector<double> find_dual_criticals(const DualLandscape& landscape,
                                        int samples_per_interval) {
  const ProblemParams& p = landscape.params();
  const double edge = 1e-10 * (1.0 + p.w);

  std::vector<double> cuts{edge};
  for (double pole : landscape.pole_offsets()) {
    const double guard = 2.0 * landscape.pole_guard(pole);
    cuts.push_back(pole - guard);
    cuts.push_back(pole + guard);
  }
  cuts.push_back(p.w - edge);

  std::vector<double> roots;

  // Boundary zone: A(t) = (x - F/G)^2/(2 alpha^2) + ln(t/w) crosses zero at
  // offsets as small as w exp(-x^2/(2 alpha^2)), far below any uniform grid.
  const double t_first = cuts[0] + (cuts[1] - cuts[0]) / samples_per_interval;
  {
    const int logs = 8192;
    const double u_lo = std::log(1e-300);
    const double u_hi = std::log(t_first);
    double prev_u = u_lo;
    double prev_v = landscape.criticality_residual_off(std::exp(u_lo));
    if (prev_v > 0.0) {
      log_info("criticality residual positive at the innermost boundary probe; "
               "a sub-1e-300 boundary root would be missed");
    }
    for (int k = 1; k <= logs; ++k) {
      const double u = u_lo + (u_hi - u_lo) * k / logs;
      const double v = landscape.criticality_residual_off(std::exp(u));
      if ((prev_v < 0.0) != (v < 0.0)) {
        roots.push_back(bisect_residual_log(landscape, prev_u, u, prev_v));
      }
      prev_u = u;
      prev_v = v;
    }
  }

  for (size_t k = 0; k + 1 < cuts.size(); k += 2) {
    scan_uniform(landscape, cuts[k], cuts[k + 1], samples_per_interval, &roots);
  }

  roots.push_back(0.5 * p.y);  // sigma_f, exact by construction
  std::sort(roots.begin(), roots.end());

  std::vector<double> unique;
  for (double t : roots) {
    if (unique.empty() || std::fabs(t - unique.back()) > kDedupeRadius) {
      unique.push_back(t);
    } else if (t == 0.5 * p.y) {
      unique.back() = t;  // the injected pseudo point wins merges
    }
  }
  return unique;
}

ExtremumKind classify_dual(const DualLandscape& landscape, double t) {
  return classify_by_second_derivative(landscape.curvature_off(t),
                                       landscape.value_off(t));
}

CriticalPoint map_to_primal(const DualLandscape& landscape, double t) {
  const ProblemParams& p = landscape.params();
  const double lever = 2.0 * t - p.y;  // = 2 sigma + y
  if (std::fabs(lever) <= kPseudoBand) {
    throw DomainError("map_to_primal called on the pseudo critical point");
  }
  const GaussianKernel kernel(p.alpha);

  CriticalPoint cp;
  cp.offset = t;
  cp.sigma = t - p.y;
  cp.c = landscape.recover_center_off(t);
  cp.p_value = primal_value(p, kernel, cp.c);
  cp.p_second = primal_hessian(p, kernel, cp.c);
  cp.pd_value = landscape.value_off(t);
  cp.pd_second = landscape.curvature_off(t);
  cp.center_curvature = landscape.center_curvature_off(t);
  cp.dual_kind = classify_by_second_derivative(cp.pd_second, cp.pd_value);
  cp.region = region_of(landscape, t, false);
  cp.pseudo = false;

  const ExtremumKind hess_kind = classify_by_second_derivative(cp.p_second, cp.p_value);
  if (determinate(cp.dual_kind)) {
    const bool flip = lever * cp.center_curvature > 0.0;
    const ExtremumKind predicted = flip ? opposite(cp.dual_kind) : cp.dual_kind;
    if (determinate(hess_kind) && hess_kind != predicted) {
      std::ostringstream os;
      os << "sign-rule prediction " << to_string(predicted)
         << " contradicts the primal hessian " << to_string(hess_kind)
         << " at sigma = " << cp.sigma;
      throw ConsistencyError(os.str());
    }
    cp.primal_kind = predicted;
  } else {
    cp.primal_kind = hess_kind;
  }
  return cp;
}

BetaAnalysis pseudo_analysis(const DualLandscape& landscape) {
  const ProblemParams& p = landscape.params();
  BetaAnalysis out;
  out.x_threshold = landscape.x_threshold();
  out.sigma_f_kind = classify_dual(landscape, 0.5 * p.y);

  if (out.x_threshold) {
    const double xo = *out.x_threshold;
    const double ax = std::fabs(p.x);
    if (ax > xo) {
      out.beta_crit = p.y * p.y * xo / (4.0 * p.alpha * p.alpha * (ax - xo));
    }

    const double bracket = p.beta + p.y * p.y / (4.0 * p.alpha * p.alpha);
    const double scale = std::max(1.0, std::fabs(p.beta * p.x) + bracket * xo);
    out.critf_satisfied =
        std::fabs(p.beta * p.x + bracket * xo) <= 1e-10 * scale ||
        std::fabs(p.beta * p.x - bracket * xo) <= 1e-10 * scale;

    // Threshold inequality vs the numeric sign, away from the margin band.
    const bool analytic_min = ax <= xo || (out.beta_crit && p.beta < *out.beta_crit);
    const bool margin = out.beta_crit && std::fabs(p.beta - *out.beta_crit) <= 1e-6;
    if (determinate(out.sigma_f_kind) && !margin &&
        analytic_min != (out.sigma_f_kind == ExtremumKind::Min)) {
      log_info("sigma_f threshold inequality disagrees with the numeric sign; ",
               "beta=", p.beta, " beta_crit=",
               out.beta_crit ? *out.beta_crit : -1.0);
    }
  }
  return out;
}

CriticalPoint pseudo_point(const DualLandscape& landscape, const BetaAnalysis& beta) {
  const ProblemParams& p = landscape.params();
  const GaussianKernel kernel(p.alpha);
  const double t = 0.5 * p.y;

  CriticalPoint cp;
  cp.offset = t;
  cp.sigma = -0.5 * p.y;
  cp.c = landscape.recover_center_off(t);
  cp.p_value = primal_value(p, kernel, cp.c);
  cp.p_second = primal_hessian(p, kernel, cp.c);
  cp.pd_value = landscape.value_off(t);
  cp.pd_second = landscape.curvature_off(t);
  cp.center_curvature = landscape.center_curvature_off(t);
  cp.dual_kind = beta.sigma_f_kind;
  cp.region = Region::PseudoOnly;
  cp.pseudo = true;
  if (beta.critf_satisfied) {
    cp.primal_kind = classify_by_second_derivative(cp.p_second, cp.p_value);
  }
  return cp;
}

std::optional<bool> order_check(std::span<const CriticalPoint> points) {
  bool found = false;
  bool ok = true;
  for (const CriticalPoint& a : points) {
    if (a.pseudo || !(a.center_curvature > 0.0)) continue;
    if (!a.primal_kind || !determinate(*a.primal_kind)) continue;
    for (const CriticalPoint& b : points) {
      if (b.pseudo || !(b.center_curvature < 0.0)) continue;
      if (!b.primal_kind || *b.primal_kind != *a.primal_kind) continue;
      found = true;
      if (!(a.pd_value < b.pd_value)) ok = false;
    }
  }
  if (!found) return std::nullopt;
  return ok;
}

SharpStructureRecord sharp_region_structure(const DualLandscape& landscape,
                                  std::span<const CriticalPoint> points,
                                  int primal_count) {
  SharpStructureRecord rec;
  rec.sigma_f_kind = classify_dual(landscape, 0.5 * landscape.params().y);
  rec.precondition_met = primal_count <= 5;
  if (!rec.precondition_met) {
    log_info("structure assertions invoked with ", primal_count,
             " primal critical points (> 5)");
  }
  for (const CriticalPoint& cp : points) {
    if (cp.pseudo || !(cp.center_curvature > 0.0)) continue;
    if (cp.offset > 0.5 * landscape.params().y) {
      ++rec.sharp_criticals;
      if (cp.dual_kind == ExtremumKind::Max) rec.sharp_has_dual_max = true;
    } else {
      ++rec.flat_criticals;
    }
  }
  if (rec.sigma_f_kind == ExtremumKind::Min) {
    rec.holds = rec.sharp_has_dual_max;
  } else if (rec.sigma_f_kind == ExtremumKind::Max) {
    rec.holds = rec.sharp_criticals == 0 && rec.flat_criticals >= 1;
  }
  return rec;
}

CaseReport detect_case(const DualLandscape& landscape,
                       std::vector<CriticalPoint> points,
                       std::vector<OraclePoint> oracle_points) {
  CaseReport report;
  report.beta = pseudo_analysis(landscape);
  report.primal_count = static_cast<int>(oracle_points.size());
  report.dual_count = static_cast<int>(points.size());
  report.points = std::move(points);
  report.oracle_points = std::move(oracle_points);

  int in_plus = 0;
  int in_minus = 0;
  for (const CriticalPoint& cp : report.points) {
    (cp.center_curvature > 0.0 ? in_plus : in_minus) += 1;
  }

  const int np = report.primal_count;
  const int nd = report.dual_count;
  const ExtremumKind sf = report.beta.sigma_f_kind;
  if (np == 3 && nd == 4 && in_minus == 0) {
    report.case_id = 3;
  } else if (np == 3 && nd == 4 && in_plus == 2 && in_minus == 2) {
    if (sf == ExtremumKind::Min) report.case_id = 1;
    if (sf == ExtremumKind::Max) report.case_id = 4;
  } else if (np == 5 && nd == 6) {
    report.case_id = 2;
  } else if (np == 1 && nd == 2) {
    report.case_id = 5;
  }
  if (report.case_id == 0) {
    log_info("landscape pattern unclassified: primal=", np, " dual=", nd,
             " S+=", in_plus, " S-=", in_minus);
  }
  return report;
}

Recommendation recommend_center(const DualLandscape& landscape,
                                const CaseReport& report) {
  Recommendation rec;
  std::ostringstream advice;

  if (report.case_id == 5) {
    advice << "the quadratic regularization dominates the data term and the only "
              "critical point is an artifact of it; choose a smaller value of beta";
    if (report.beta.sigma_f_kind == ExtremumKind::Max && report.beta.beta_crit) {
      advice << " (below beta_crit = " << *report.beta.beta_crit
             << ", where sigma_f turns back into a minimum)";
    }
    rec.advice = advice.str();
    return rec;
  }

  std::vector<const CriticalPoint*> minima;
  for (const CriticalPoint& cp : report.points) {
    if (cp.pseudo || !cp.primal_kind || *cp.primal_kind != ExtremumKind::Min) continue;
    minima.push_back(&cp);
  }

  const CriticalPoint* best = nullptr;
  for (const CriticalPoint* cp : minima) {
    if (cp->region != Region::PlusSharp) continue;
    if (best == nullptr || std::fabs(cp->sigma) < std::fabs(best->sigma)) best = cp;
  }
  if (best != nullptr) {
    rec.point = *best;
    return rec;
  }

  if (report.beta.sigma_f_kind == ExtremumKind::Max) {
    // No S+_sharp criticals exist (sharp_region_structure); fall back to S+_flat,
    // sigma closest to zero first, boundary artifacts last.
    const CriticalPoint* fallback = nullptr;
    for (const CriticalPoint* cp : minima) {
      if (!(cp->center_curvature > 0.0) || cp->offset > 0.5 * landscape.params().y)
        continue;
      if (fallback == nullptr) {
        fallback = cp;
        continue;
      }
      const bool cp_boundary = cp->region == Region::Boundary;
      const bool fb_boundary = fallback->region == Region::Boundary;
      if (cp_boundary != fb_boundary) {
        if (fb_boundary) fallback = cp;
      } else if (std::fabs(cp->sigma) < std::fabs(fallback->sigma)) {
        fallback = cp;
      }
    }
    advice << "sigma_f is a local maximum of the dual: beta = "
           << landscape.params().beta;
    if (report.beta.beta_crit) {
      advice << " exceeds beta_crit = " << *report.beta.beta_crit;
    }
    advice << "; choose beta below that threshold to restore a minimizer in "
              "S+_sharp";
    rec.advice = advice.str();
    if (fallback != nullptr) rec.point = *fallback;
    return rec;
  }

  // sigma_f inflection under the matched-partner conditions: the pseudo point
  // itself pairs with a primal minimum.
  if (report.beta.critf_satisfied) {
    for (const CriticalPoint& cp : report.points) {
      if (cp.pseudo && cp.primal_kind && *cp.primal_kind == ExtremumKind::Min) {
        rec.point = cp;
        advice << "the threshold configuration is active: sigma_f itself pairs "
                  "with a primal minimum";
        rec.advice = advice.str();
        return rec;
      }
    }
  }

  advice << "no admissible minimizer found in S+; choose a smaller value of beta";
  rec.advice = advice.str();
  return rec;
}

CaseReport analyze(const ProblemParams& params) {
  ProblemParams p = params.normalized();
  if (p.w == 0.0) throw RegimeError("w must be nonzero");
  if (!(p.y > 0.0)) throw RegimeError("w y must be positive");
  p.validate();
  if (p.f != 0.0) {
    log_info("nonzero linear coefficient f: the case and threshold analysis "
             "assumes f = 0");
  }

  const DualLandscape landscape(p);
  const GaussianKernel kernel(p.alpha);
  const BetaAnalysis beta = pseudo_analysis(landscape);

  std::vector<CriticalPoint> points;
  bool pseudo_emitted = false;
  for (double t : find_dual_criticals(landscape)) {
    if (std::fabs(2.0 * t - p.y) <= kPseudoBand) {
      if (!pseudo_emitted) points.push_back(pseudo_point(landscape, beta));
      pseudo_emitted = true;
    } else {
      points.push_back(map_to_primal(landscape, t));
    }
  }

  std::vector<OraclePoint> oracle =
      primal_criticals_bruteforce(p, kernel, OracleConfig::defaults(p));

  CaseReport report = detect_case(landscape, std::move(points), std::move(oracle));

  std::vector<DualPointSample> samples;
  for (const CriticalPoint& cp : report.points) {
    samples.push_back({cp.sigma, cp.c, cp.pd_value, cp.pseudo,
                       !cp.pseudo || cp.primal_kind.has_value()});
  }
  report.oracle_agrees =
      duality_gap_audit(p, kernel, samples, report.oracle_points).agrees;

  Recommendation rec = recommend_center(landscape, report);
  report.recommended = rec.point;
  report.advice = rec.advice;
  return report;
}

}  // namespace canodual
