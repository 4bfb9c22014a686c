#include "canodual/canonical.hpp"

#include <cmath>
#include <string>

#include "canodual/errors.hpp"

namespace canodual {

FirstLevelPair first_level(const ProblemParams& p, const RadialKernel& kernel, double c) {
  const double u = p.x - c;
  const double xi = p.w * kernel.phi(u * u);
  return {xi, xi - p.y};
}

SecondLevelPair second_level(const ProblemParams& p, const RadialKernel& kernel, double c) {
  const double u = p.x - c;
  const double eps = u * u;
  return {eps, p.w * kernel.phi_prime(eps)};
}

double v_conjugate(double sigma, double y) {
  return 0.5 * sigma * sigma + y * sigma;
}

double u_conjugate(const RadialKernel& kernel, double w, double tau) {
  const double eps = kernel.phi_prime_inverse(tau / w);
  return tau * eps - w * kernel.phi(eps);
}

double tau_from_sigma(const RadialKernel& kernel, double w, double y, double sigma) {
  const double s = (sigma + y) / w;
  if (s == 0.0) return 0.0;  // boundary limit of the duality map
  const double eps = kernel.phi_inverse(s);
  return w * kernel.phi_prime(eps);
}

double total_complementarity(const ProblemParams& p, const RadialKernel& kernel,
                             double c, double sigma, double tau) {
  const double ts = tau * sigma;
  return 0.5 * c * c * (2.0 * ts + p.beta) - c * (2.0 * ts * p.x + p.f) -
         u_conjugate(kernel, p.w, tau) * sigma - v_conjugate(sigma, p.y) +
         p.x * p.x * ts;
}

double complementarity_center_slope(const ProblemParams& p, double c,
                                    double sigma, double tau) {
  const double ts = tau * sigma;
  return c * (2.0 * ts + p.beta) - (2.0 * ts * p.x + p.f);
}

double stationary_center(const ProblemParams& p, double sigma, double tau) {
  const double denom = 2.0 * tau * sigma + p.beta;
  if (std::fabs(denom) < 1e-14) {
    throw SingularityError("stationary center undefined: 2 tau sigma + beta = " +
                           std::to_string(denom));
  }
  return (2.0 * tau * p.x * sigma + p.f) / denom;
}

double dual_value_general(const ProblemParams& p, const RadialKernel& kernel,
                          double sigma) {
  const double lo = -p.y;
  const double hi = p.w - p.y;
  const double margin = 1e-10 * (1.0 + std::fabs(p.w));
  if (!(sigma >= lo + margin) || !(sigma <= hi - margin)) {
    throw DomainError("sigma outside the evaluable dual domain");
  }
  const double tau = tau_from_sigma(kernel, p.w, p.y, sigma);
  const double c = stationary_center(p, sigma, tau);
  return total_complementarity(p, kernel, c, sigma, tau);
}

}  // namespace canodual
