#include "canodual/kernel.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "canodual/errors.hpp"

namespace canodual {

namespace {

void require_nonneg_eps(double eps) {
  if (!(eps >= 0.0)) {
    throw DomainError("kernel argument eps must be >= 0, got " +
                      std::to_string(eps));
  }
}

}  // namespace

GaussianKernel::GaussianKernel(double alpha)
    : alpha_(alpha), two_alpha_sq_(2.0 * alpha * alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("Gaussian width alpha must be positive and finite");
  }
}

double GaussianKernel::phi(double eps) const {
  require_nonneg_eps(eps);
  return std::exp(-eps / two_alpha_sq_);
}

double GaussianKernel::phi_prime(double eps) const {
  require_nonneg_eps(eps);
  return -std::exp(-eps / two_alpha_sq_) / two_alpha_sq_;
}

double GaussianKernel::phi_second(double eps) const {
  require_nonneg_eps(eps);
  return std::exp(-eps / two_alpha_sq_) / (two_alpha_sq_ * two_alpha_sq_);
}

double GaussianKernel::phi_inverse(double value) const {
  if (value > 1.0 && value <= 1.0 + 1e-14) value = 1.0;  // rounding grace band
  if (!(value > 0.0) || !(value <= 1.0)) {
    throw DomainError("phi_inverse argument must lie in (0, 1], got " +
                      std::to_string(value));
  }
  return -two_alpha_sq_ * std::log(value) + 0.0;  // +0.0 clears -0.0 at v = 1
}

double GaussianKernel::phi_prime_inverse(double slope) const {
  double scaled = -two_alpha_sq_ * slope;  // = exp(-eps / 2 alpha^2)
  if (scaled > 1.0 && scaled <= 1.0 + 1e-14) scaled = 1.0;
  if (!(scaled > 0.0) || !(scaled <= 1.0)) {
    throw DomainError("phi_prime_inverse argument outside [-1/(2 alpha^2), 0)");
  }
  return -two_alpha_sq_ * std::log(scaled) + 0.0;
}

Interval GaussianKernel::eps_domain() const {
  return {0.0, std::numeric_limits<double>::infinity()};
}

Interval GaussianKernel::phi_range() const {
  return {0.0, 1.0};  // 0 only as the eps -> inf limit
}

Interval GaussianKernel::phi_prime_range() const {
  return {-1.0 / two_alpha_sq_, 0.0};  // 0 only in the limit
}

}  // namespace canodual
