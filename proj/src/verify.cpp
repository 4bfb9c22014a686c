#include "canodual/verify.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "canodual/canonical.hpp"
#include "canodual/errors.hpp"
#include "canodual/kernel.hpp"
#include "canodual/oracle.hpp"
#include "canodual/solver.hpp"

namespace canodual {

ProblemParams instance_case1() { return {1.0, 1.0, 2.0, kReferenceAlpha, 0.1, 0.0}; }
ProblemParams instance_case2() { return {4.0, 1.0, 2.0, kReferenceAlpha, 0.1, 0.0}; }
ProblemParams instance_case3() { return {4.0, 1.0, 2.0, kReferenceAlpha, 0.22, 0.0}; }
ProblemParams instance_case4() { return {8.0, 1.0, 2.0, kReferenceAlpha, 0.25, 0.0}; }
ProblemParams instance_boundary_variant() {
  return {4.0, 1.0, 2.0, kReferenceAlpha, 0.12, 0.0};
}
ProblemParams instance_case5() { return {1.0, 1.0, 2.0, kReferenceAlpha, 5.0, 0.0}; }

namespace {

std::vector<ProblemParams> reference_instances() {
  return {instance_case1(), instance_case2(), instance_case3(), instance_case4()};
}

struct InstanceAnalysis {
  DualLandscape landscape;
  std::vector<CriticalPoint> points;
  BetaAnalysis beta;
};

InstanceAnalysis analyze_dual_side(const ProblemParams& p) {
  InstanceAnalysis out{DualLandscape(p), {}, {}};
  out.beta = pseudo_analysis(out.landscape);
  bool pseudo_emitted = false;
  for (double t : find_dual_criticals(out.landscape)) {
    if (std::fabs(2.0 * t - p.y) <= 1e-8) {
      if (!pseudo_emitted) out.points.push_back(pseudo_point(out.landscape, out.beta));
      pseudo_emitted = true;
    } else {
      out.points.push_back(map_to_primal(out.landscape, t));
    }
  }
  return out;
}

bool gap_ok(const CriticalPoint& cp) {
  return std::fabs(cp.p_value - cp.pd_value) <=
         1e-8 * (1.0 + std::fabs(cp.pd_value));
}

// Relation between the two second derivatives at a matched pair:
// Pd'' = -(2 sigma + y) / (G (sigma + y)) P''.
bool relation_ok(const ProblemParams& p, const CriticalPoint& cp, double* err) {
  const double predicted = -(2.0 * cp.offset - p.y) /
                           (cp.center_curvature * cp.offset) * cp.p_second;
  *err = std::fabs(cp.pd_second - predicted) / (1.0 + std::fabs(cp.pd_second));
  return *err <= 1e-6;
}

}  // namespace

std::vector<CheckResult> run_core_checks(FaultInjection fault) {
  std::vector<CheckResult> results;
  const auto instances = reference_instances();

  {  // duality-gap audit against the brute-force oracle
    CheckResult check{"duality_gap_audit", true, ""};
    std::ostringstream detail;
    for (size_t i = 0; i < instances.size(); ++i) {
      const ProblemParams& p = instances[i];
      const GaussianKernel kernel(p.alpha);
      InstanceAnalysis a = analyze_dual_side(p);
      std::vector<DualPointSample> samples;
      for (const CriticalPoint& cp : a.points) {
        DualPointSample s{cp.sigma, cp.c, cp.pd_value, cp.pseudo,
                          !cp.pseudo || cp.primal_kind.has_value()};
        if (fault == FaultInjection::FlipLoad) s.c = -s.c;
        samples.push_back(s);
      }
      const auto oracle =
          primal_criticals_bruteforce(p, kernel, OracleConfig::defaults(p));
      const GapAuditReport report = duality_gap_audit(p, kernel, samples, oracle);
      if (!report.agrees) {
        check.passed = false;
        detail << "instance " << i + 1 << ": " << report.matches.size()
               << " matched, " << report.unmatched_dual_sigmas.size()
               << " unmatched dual, " << report.unmatched_oracle_centers.size()
               << " unmatched oracle; ";
      }
    }
    check.detail = detail.str();
    results.push_back(check);
    if (!check.passed) return results;  // report the first failing battery
  }

  {  // derivative consistency
    CheckResult check{"fd_check", true, ""};
    const ProblemParams p = instances[0];
    const GaussianKernel kernel(p.alpha);
    const DualLandscape landscape(p);
    double worst = 0.0;
    worst = std::max(worst, fd_check([&](double c) { return primal_value(p, kernel, c); },
                                     [&](double c) { return primal_gradient(p, kernel, c); },
                                     {-3.0, 4.0}, 200));
    worst = std::max(worst, fd_check([&](double c) { return primal_gradient(p, kernel, c); },
                                     [&](double c) { return primal_hessian(p, kernel, c); },
                                     {-3.0, 4.0}, 200));
    if (worst > 1e-6) check.passed = false;
    for (const Interval& sub : {Interval{-0.95, 0.0}, Interval{0.09, 0.95}}) {
      const double dual_worst =
          std::max(fd_check([&](double s) { return landscape.value(s); },
                            [&](double s) { return landscape.slope(s); }, sub, 100),
                   fd_check([&](double s) { return landscape.slope(s); },
                            [&](double s) { return landscape.curvature(s); }, sub, 100));
      if (dual_worst > 1e-6) check.passed = false;
      worst = std::max(worst, dual_worst);
    }
    std::ostringstream detail;
    detail << "worst relative error " << worst;
    check.detail = detail.str();
    results.push_back(check);
    if (!check.passed) return results;
  }

  {  // conjugate round trips
    CheckResult check{"conjugate_roundtrip", true, ""};
    const GaussianKernel kernel(kReferenceAlpha);
    const auto grid = linspace(0.0, 6.0, 61);
    const double u_err = conjugate_roundtrip(kernel, 2.0, grid);
    const double v_err = v_conjugate_roundtrip(1.0, {-0.9, 0.9}, 37);
    std::ostringstream detail;
    detail << "U error " << u_err << ", V error " << v_err;
    check.detail = detail.str();
    check.passed = u_err <= 1e-5 && v_err <= 1e-8;
    results.push_back(check);
    if (!check.passed) return results;
  }

  {  // S+ structure assertions
    CheckResult check{"sharp_region_structure", true, ""};
    for (const ProblemParams& p : instances) {
      InstanceAnalysis a = analyze_dual_side(p);
      int primal = 0;
      for (const CriticalPoint& cp : a.points) {
        if (!cp.pseudo || cp.primal_kind) ++primal;
      }
      const SharpStructureRecord rec = sharp_region_structure(a.landscape, a.points, primal);
      if (rec.holds && !*rec.holds) check.passed = false;
    }
    results.push_back(check);
    if (!check.passed) return results;
  }

  {  // cross-region ordering on the reference instances
    CheckResult check{"order_check", true, ""};
    for (const ProblemParams& p : instances) {
      InstanceAnalysis a = analyze_dual_side(p);
      const auto verdict = order_check(a.points);
      if (verdict && !*verdict) check.passed = false;
    }
    results.push_back(check);
  }

  return results;
}

SweepOutcome run_sweep(std::uint64_t seed, int instances) {
  SweepOutcome out;
  std::mt19937_64 rng(seed);
  const auto uniform = [&rng](double lo, double hi) {
    // explicit 53-bit mapping; identical sequences on every platform
    return lo + (hi - lo) * ((rng() >> 11) * 0x1.0p-53);
  };

  for (int i = 0; i < instances; ++i) {
    ProblemParams p;
    p.y = uniform(0.2, 1.5);
    p.w = uniform(1.2, 3.0);
    p.x = uniform(0.0, 10.0);
    p.beta = uniform(0.01, 0.5);
    p.alpha = uniform(0.4, 1.2);
    ++out.instances;

    InstanceAnalysis a = analyze_dual_side(p);

    for (const CriticalPoint& cp : a.points) {
      if (cp.pseudo) continue;
      ++out.gap_checked;
      const double gap = std::fabs(cp.p_value - cp.pd_value) /
                         (1.0 + std::fabs(cp.pd_value));
      out.worst_gap = std::max(out.worst_gap, gap);
      if (!gap_ok(cp)) {
        ++out.gap_violations;
        if (out.first_failures.size() < 8) {
          std::ostringstream os;
          os << "gap violation at instance " << i << " sigma=" << cp.sigma
             << " gap=" << gap;
          out.first_failures.push_back(os.str());
        }
      }
      double rel_err = 0.0;
      ++out.relation_checked;
      if (!relation_ok(p, cp, &rel_err)) {
        ++out.relation_violations;
        if (out.first_failures.size() < 8) {
          std::ostringstream os;
          os << "second-derivative relation violation at instance " << i
             << " sigma=" << cp.sigma << " err=" << rel_err;
          out.first_failures.push_back(os.str());
        }
      }
      out.worst_relation = std::max(out.worst_relation, rel_err);
    }

    if (a.beta.x_threshold) {
      const bool margin =
          a.beta.beta_crit && std::fabs(p.beta - *a.beta.beta_crit) <= 1e-6;
      if (!margin && (a.beta.sigma_f_kind == ExtremumKind::Min ||
                      a.beta.sigma_f_kind == ExtremumKind::Max)) {
        ++out.threshold_checked;
        const bool analytic_min =
            std::fabs(p.x) <= *a.beta.x_threshold ||
            (a.beta.beta_crit && p.beta < *a.beta.beta_crit);
        if (analytic_min != (a.beta.sigma_f_kind == ExtremumKind::Min)) {
          ++out.threshold_disagreements;
          if (out.first_failures.size() < 8) {
            std::ostringstream os;
            os << "threshold disagreement at instance " << i << " beta=" << p.beta;
            out.first_failures.push_back(os.str());
          }
        }
      }
    }

    int primal = 0;
    for (const CriticalPoint& cp : a.points) {
      if (!cp.pseudo || cp.primal_kind) ++primal;
    }
    const SharpStructureRecord rec = sharp_region_structure(a.landscape, a.points, primal);
    if (rec.holds) {
      ++out.structure_checked;
      if (!*rec.holds) {
        ++out.structure_failures;
        if (out.first_failures.size() < 8) {
          std::ostringstream os;
          os << "structure failure at instance " << i;
          out.first_failures.push_back(os.str());
        }
      }
    }

    const auto verdict = order_check(a.points);
    if (verdict) {
      ++out.ordering_checked;
      if (!*verdict) {
        ++out.ordering_failures;
        if (out.first_failures.size() < 8) {
          std::ostringstream os;
          os << "ordering failure at instance " << i << " (x=" << p.x
             << " y=" << p.y << " w=" << p.w << " alpha=" << p.alpha
             << " beta=" << p.beta << ")";
          out.first_failures.push_back(os.str());
        }
      }
    }
  }
  return out;
}

}  // namespace canodual
