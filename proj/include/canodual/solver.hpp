#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "canodual/classification.hpp"
#include "canodual/dual_gaussian.hpp"
#include "canodual/oracle.hpp"

namespace canodual {

/// Where a dual critical point sits in the partitioned domain. Boundary marks
/// points within 1e-3 y of sigma = -y (regularization artifacts, excluded
/// from recommendation); PseudoOnly marks sigma_f.
enum class Region { PlusSharp, PlusFlat, Minus, PseudoOnly, Boundary };

std::string to_string(Region region);

/// A matched dual/primal critical pair.
struct CriticalPoint {
  double sigma = 0.0;
  double offset = 0.0;  // t = sigma + y; authoritative next to the boundary
  double c = 0.0;
  double p_value = 0.0;
  double pd_value = 0.0;
  double p_second = 0.0;
  double pd_second = 0.0;
  double center_curvature = 0.0;  // G at the point; sign = S+/S- membership
  ExtremumKind dual_kind = ExtremumKind::Degenerate;
  std::optional<ExtremumKind> primal_kind;  // empty: pseudo point without a partner
  Region region = Region::PseudoOnly;
  bool pseudo = false;
};

/// Threshold analysis of the pseudo critical point sigma_f = -y/2.
struct BetaAnalysis {
  std::optional<double> x_threshold;  // x_o
  std::optional<double> beta_crit;    // present iff |x| > x_o
  ExtremumKind sigma_f_kind = ExtremumKind::Degenerate;
  bool critf_satisfied = false;
};

/// Structural assertions about the S+ subregions.
struct SharpStructureRecord {
  std::optional<bool> holds;  // empty when sigma_f is an inflection
  bool precondition_met = true;  // primal critical count <= 5
  ExtremumKind sigma_f_kind = ExtremumKind::Degenerate;
  int sharp_criticals = 0;
  int flat_criticals = 0;
  bool sharp_has_dual_max = false;
};

struct CaseReport {
  int case_id = 0;  // 1..5; 0 = unclassified
  int primal_count = 0;
  int dual_count = 0;
  std::vector<CriticalPoint> points;          // ascending sigma
  std::vector<OraclePoint> oracle_points;     // brute-force primal criticals
  BetaAnalysis beta;
  std::optional<CriticalPoint> recommended;
  std::string advice;
  bool oracle_agrees = false;
};

struct Recommendation {
  std::optional<CriticalPoint> point;
  std::string advice;
};

/// All critical points of the dual in offset coordinates t = sigma + y,
/// ascending. sigma_f (t = y/2) is injected analytically; the remaining
/// points are the zeros of the criticality residual A, located by a uniform
/// scan per pole-free subinterval with bisection + Newton polish, a
/// log-spaced scan of the boundary zone below the first uniform cell, and a
/// near-miss refinement pass that rescues root pairs tighter than the grid.
std::vector<double> find_dual_criticals(const DualLandscape& landscape,
                                        int samples_per_interval = 20'000);

/// Min / Max / Inflection via the sign of the dual second derivative.
ExtremumKind classify_dual(const DualLandscape& landscape, double t);

/// Builds the matched pair for a non-pseudo dual critical point; the primal
/// kind follows the sign rule flip((2 sigma + y) G > 0) of the dual kind and
/// must agree with the primal hessian, otherwise ConsistencyError.
/// Requires |2 sigma + y| > 1e-8 (DomainError otherwise; sigma_f goes through
/// pseudo_analysis instead).
CriticalPoint map_to_primal(const DualLandscape& landscape, double t);

/// x_o, beta_crit, the numeric classification of sigma_f (cross-checked
/// against the analytic threshold inequality), and the matched-partner
/// conditions |beta x -+ (beta + y^2/(4 alpha^2)) x_o| <= 1e-10 scale.
BetaAnalysis pseudo_analysis(const DualLandscape& landscape);

/// Record for sigma_f itself (primal_kind only under the matched-partner
/// conditions).
CriticalPoint pseudo_point(const DualLandscape& landscape, const BetaAnalysis& beta);

/// Cross-region value ordering: true iff every S+ / S- pair of non-pseudo
/// points with equal primal kinds satisfies pd(S+) < pd(S-); empty optional
/// when no such pair exists (precondition unmet).
std::optional<bool> order_check(std::span<const CriticalPoint> points);

/// sigma_f a local min -> a dual local max exists in S+_sharp;
/// sigma_f a local max -> S+_sharp holds no criticals and S+_flat at least one.
SharpStructureRecord sharp_region_structure(const DualLandscape& landscape,
                                  std::span<const CriticalPoint> points,
                                  int primal_count);

/// Assigns the published landscape pattern (1..5) from the counts, the
/// sigma_f kind and the region occupancy; 0 when nothing matches.
CaseReport detect_case(const DualLandscape& landscape,
                       std::vector<CriticalPoint> points,
                       std::vector<OraclePoint> oracle_points);

/// Training-solution selection: prefer the primal minimizer in S+_sharp
/// (smallest |sigma| on ties); when sigma_f is a maximum fall back to the
/// S+_flat minimizer with sigma closest to zero plus advice to lower beta.
/// Near-boundary artifacts (t < 1e-3 y) are never preferred over an interior
/// choice, and the dominated-regularization pattern (case 5) yields no
/// selection at all, only advice.
Recommendation recommend_center(const DualLandscape& landscape,
                                const CaseReport& report);

/// Full pipeline: normalize, enumerate and classify, brute-force audit,
/// detect the case, recommend. Throws RegimeError when w = 0 or w y <= 0.
CaseReport analyze(const ProblemParams& params);

}  // namespace canodual
