#pragma once

#include <optional>
#include <vector>

#include "canodual/interval.hpp"
#include "canodual/primal.hpp"

namespace canodual {

/// Sign partition of the dual domain S_a = (-y, w - y).
///
/// s_plus holds the sigma where the complementarity function is convex in c
/// (G > 0), s_minus where it is concave (G < 0); g_roots are the zeros of G
/// inside S_a separating them. s_sharp / s_flat split s_plus at the pseudo
/// critical point sigma_f = -y/2, which always lies in s_plus.
struct RegionPartition {
  Interval s_a;
  std::vector<double> g_roots;
  std::vector<Interval> s_plus;
  std::vector<Interval> s_minus;
  std::vector<Interval> s_sharp;
  std::vector<Interval> s_flat;
};

/// Closed-form dual landscape of the Gaussian problem: the center curvature
/// G, the center load F, the dual function and its first two derivatives,
/// the primal-center recovery map F/G, and the region partition.
///
/// Every quantity is also exposed in the offset coordinate t = sigma + y,
/// the distance above the lower domain boundary. Near that boundary the
/// landscape varies on scales far below the spacing of doubles around
/// sigma = -y (critical points can sit at t ~ 1e-28), so the offset overloads
/// are the accurate evaluation path; the sigma overloads guard a
/// neighbourhood of radius 1e-9 (1 + scale) around -y and around each G-root
/// and throw SingularityError inside it.
class DualLandscape {
 public:
  /// Requires w > 0 and y > 0 (normalize first); throws RegimeError otherwise.
  explicit DualLandscape(const ProblemParams& params);

  const ProblemParams& params() const { return params_; }
  const RegionPartition& partition() const { return partition_; }

  /// The pseudo dual critical point sigma_f = -y/2.
  double pseudo_sigma() const { return -0.5 * params_.y; }

  /// Threshold abscissa x_o = sqrt(-2 alpha^2 ln(y / 2w)); empty when
  /// y/(2w) lies outside (0, 1).
  std::optional<double> x_threshold() const { return x_threshold_; }

  // --- offset interface, t = sigma + y in (0, w) ---------------------------
  double center_curvature_off(double t) const;  // G
  double center_load_off(double t) const;       // F, includes the linear f
  double recover_center_off(double t) const;    // F / G
  double value_off(double t) const;             // P^d
  double slope_off(double t) const;             // dP^d/dsigma
  double curvature_off(double t) const;         // d2P^d/dsigma2

  /// Criticality residual A(t) = (x - F/G)^2 / (2 alpha^2) + ln(t/w).
  /// The dual slope factors as -A(t) (2 sigma + y), so the non-pseudo
  /// critical points are exactly the zeros of A.
  double criticality_residual_off(double t) const;

  // --- sigma interface, guarded ---------------------------------------------
  double center_curvature(double sigma) const;
  double center_load(double sigma) const;
  double recover_center(double sigma) const;
  double value(double sigma) const;
  double slope(double sigma) const;
  double curvature(double sigma) const;

  /// Offset of the guarded band around each pole (G-root) in t coordinates.
  const std::vector<double>& pole_offsets() const { return pole_offsets_; }
  double pole_guard(double pole_t) const;

 private:
  void check_offset(double t) const;       // domain + pole guards
  double checked_offset(double sigma) const;  // sigma guards, converts to t

  ProblemParams params_;
  double inv_a2_;  // 1 / alpha^2
  std::optional<double> x_threshold_;
  std::vector<double> pole_offsets_;
  RegionPartition partition_;
};

}  // namespace canodual
