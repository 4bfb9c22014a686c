#pragma once

#include "canodual/interval.hpp"

namespace canodual {

/// Radial-basis kernel contract: phi and its first two derivatives over the
/// squared-radius argument eps = ||x - c||^2, together with the inverses of
/// phi and phi' needed by the canonical transformation.
///
/// Implementations must keep phi and phi' strictly monotone on eps_domain()
/// so that both inverses exist. Kernel objects are immutable after
/// construction and safe for concurrent reads.
class RadialKernel {
 public:
  virtual ~RadialKernel() = default;

  virtual double phi(double eps) const = 0;
  virtual double phi_prime(double eps) const = 0;
  virtual double phi_second(double eps) const = 0;

  /// eps such that phi(eps) == value; value must lie in phi_range().
  virtual double phi_inverse(double value) const = 0;

  /// eps such that phi'(eps) == slope; slope must lie in phi_prime_range().
  virtual double phi_prime_inverse(double slope) const = 0;

  /// Admissible squared-radius arguments (E_b).
  virtual Interval eps_domain() const = 0;
  /// Values attained by phi over eps_domain().
  virtual Interval phi_range() const = 0;
  /// Values attained by phi' over eps_domain().
  virtual Interval phi_prime_range() const = 0;
};

/// Gaussian kernel phi(eps) = exp(-eps / (2 alpha^2)); alpha is the standard
/// deviation. phi is strictly decreasing from phi(0) = 1, underflowing to 0
/// for huge eps instead of erroring, and phi_inverse is the closed-form
/// logarithm -2 alpha^2 ln(v).
class GaussianKernel final : public RadialKernel {
 public:
  explicit GaussianKernel(double alpha);

  double alpha() const { return alpha_; }

  double phi(double eps) const override;
  double phi_prime(double eps) const override;
  double phi_second(double eps) const override;
  double phi_inverse(double value) const override;
  double phi_prime_inverse(double slope) const override;

  Interval eps_domain() const override;
  Interval phi_range() const override;
  Interval phi_prime_range() const override;

 private:
  double alpha_;
  double two_alpha_sq_;  // 2 alpha^2, the decay scale
};

}  // namespace canodual
