#include "canodual/dual_gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "canodual/errors.hpp"

namespace canodual {

namespace {

// G is a downward parabola in sigma maximized at sigma_f; its lower root is
// always below -y, so at most the upper root lands inside S_a.
std::vector<double> g_roots_in_domain(const ProblemParams& p) {
  const double disc = p.y * p.y + 4.0 * p.alpha * p.alpha * p.beta;
  const double upper = 0.5 * (-p.y + std::sqrt(disc));
  if (upper > -p.y && upper < p.w - p.y) return {upper};
  return {};
}

}  // namespace

DualLandscape::DualLandscape(const ProblemParams& params) : params_(params) {
  if (!(params_.w > 0.0) || !(params_.y > 0.0)) {
    throw RegimeError("dual landscape requires w > 0 and y > 0 (normalize first)");
  }
  params_.validate();
  inv_a2_ = 1.0 / (params_.alpha * params_.alpha);

  const double ratio = params_.y / (2.0 * params_.w);
  if (ratio > 0.0 && ratio < 1.0) {
    x_threshold_ = std::sqrt(-2.0 * params_.alpha * params_.alpha * std::log(ratio));
  }

  const double y = params_.y;
  const double w = params_.w;
  partition_.s_a = {-y, w - y};
  partition_.g_roots = g_roots_in_domain(params_);
  const double sf = pseudo_sigma();
  if (partition_.g_roots.empty()) {
    partition_.s_plus = {{-y, w - y}};
  } else {
    const double r = partition_.g_roots.front();
    partition_.s_plus = {{-y, r}};
    partition_.s_minus = {{r, w - y}};
  }
  for (const Interval& plus : partition_.s_plus) {
    if (plus.hi > sf) partition_.s_sharp.push_back({std::max(plus.lo, sf), plus.hi});
    if (plus.lo < sf) partition_.s_flat.push_back({plus.lo, std::min(plus.hi, sf)});
  }
  for (double r : partition_.g_roots) pole_offsets_.push_back(r + y);
}

double DualLandscape::pole_guard(double pole_t) const {
  return 1e-9 * (1.0 + std::fabs(pole_t - params_.y));
}

void DualLandscape::check_offset(double t) const {
  if (!(t > 0.0) || !(t < params_.w)) {
    throw DomainError("offset t = sigma + y outside (0, w), got " + std::to_string(t));
  }
  for (double pt : pole_offsets_) {
    if (std::fabs(t - pt) < pole_guard(pt)) {
      throw SingularityError("evaluation inside the guarded band of a G-root");
    }
  }
}

double DualLandscape::checked_offset(double sigma) const {
  const double y = params_.y;
  if (!(sigma > -y) || !(sigma < params_.w - y)) {
    throw DomainError("sigma outside the dual domain (-y, w - y)");
  }
  if (std::fabs(sigma + y) < 1e-9 * (1.0 + y)) {
    throw SingularityError(
        "sigma within the guarded band of the boundary log singularity; "
        "use the offset interface for boundary work");
  }
  const double t = sigma + y;
  check_offset(t);
  return t;
}

double DualLandscape::center_curvature_off(double t) const {
  return params_.beta - (t - params_.y) * t * inv_a2_;
}

double DualLandscape::center_load_off(double t) const {
  return -params_.x * (t - params_.y) * t * inv_a2_ + params_.f;
}

double DualLandscape::recover_center_off(double t) const {
  const double g = center_curvature_off(t);
  if (g == 0.0) throw SingularityError("recover_center at a G-root");
  return center_load_off(t) / g;
}

double DualLandscape::value_off(double t) const {
  check_offset(t);
  const double sigma = t - params_.y;
  const double f = center_load_off(t);
  const double g = center_curvature_off(t);
  const double quad = sigma * t;  // sigma^2 + y sigma
  return -0.5 * f * f / g - std::log(t / params_.w) * quad + 0.5 * sigma * sigma -
         params_.x * params_.x * quad * (0.5 * inv_a2_);
}

double DualLandscape::criticality_residual_off(double t) const {
  check_offset(t);
  const double miss = params_.x - recover_center_off(t);
  return miss * miss * (0.5 * inv_a2_) + std::log(t / params_.w);
}

double DualLandscape::slope_off(double t) const {
  const double sigma = t - params_.y;
  return -criticality_residual_off(t) * (2.0 * sigma + params_.y);
}

double DualLandscape::curvature_off(double t) const {
  check_offset(t);
  const double sigma = t - params_.y;
  const double g = center_curvature_off(t);
  const double miss = params_.x - recover_center_off(t);
  const double lever = 2.0 * sigma + params_.y;
  return -miss * miss * lever * lever * inv_a2_ * inv_a2_ / g - lever / t -
         miss * miss * inv_a2_ - 2.0 * std::log(t / params_.w);
}

double DualLandscape::center_curvature(double sigma) const {
  return center_curvature_off(sigma + params_.y);
}

double DualLandscape::center_load(double sigma) const {
  return center_load_off(sigma + params_.y);
}

double DualLandscape::recover_center(double sigma) const {
  const double t = sigma + params_.y;
  for (double pt : pole_offsets_) {
    if (std::fabs(t - pt) < pole_guard(pt)) {
      throw SingularityError("recover_center inside the guarded band of a G-root");
    }
  }
  return recover_center_off(t);
}

double DualLandscape::value(double sigma) const {
  return value_off(checked_offset(sigma));
}

double DualLandscape::slope(double sigma) const {
  return slope_off(checked_offset(sigma));
}

double DualLandscape::curvature(double sigma) const {
  return curvature_off(checked_offset(sigma));
}

}  // namespace canodual
