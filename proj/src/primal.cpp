#include "canodual/primal.hpp"

#include <cmath>

#include "canodual/errors.hpp"
#include "canodual/log.hpp"

namespace canodual {

bool ProblemParams::canonical_regime() const {
  return w * y > 0.0 && std::fabs(y) < std::fabs(w);
}

void ProblemParams::validate() const {
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  if (!(beta >= 0.0)) throw DomainError("beta must be nonnegative");
  if (w == 0.0) throw DomainError("w must be nonzero");
  if (!canonical_regime()) {
    log_info("params outside canonical regime (need w*y > 0 and |y| < |w|): ",
             "x=", x, " y=", y, " w=", w);
  }
}

ProblemParams ProblemParams::normalized() const {
  ProblemParams out = *this;
  if (out.w < 0.0) {
    out.w = -out.w;
    out.y = -out.y;
  }
  return out;
}

double primal_value(const ProblemParams& p, const RadialKernel& kernel, double c) {
  const double u = p.x - c;
  const double residual = p.w * kernel.phi(u * u) - p.y;
  return 0.5 * residual * residual + 0.5 * p.beta * c * c - p.f * c;
}

double primal_gradient(const ProblemParams& p, const RadialKernel& kernel, double c) {
  const double u = p.x - c;
  const double eps = u * u;
  const double residual = p.w * kernel.phi(eps) - p.y;
  return -2.0 * p.w * u * kernel.phi_prime(eps) * residual + p.beta * c - p.f;
}

double primal_hessian(const ProblemParams& p, const RadialKernel& kernel, double c) {
  const double u = p.x - c;
  const double eps = u * u;
  const double phi = kernel.phi(eps);
  const double dphi = kernel.phi_prime(eps);
  const double ddphi = kernel.phi_second(eps);
  const double residual = p.w * phi - p.y;
  return 2.0 * p.w * dphi * residual +
         4.0 * p.w * eps * ddphi * residual +
         4.0 * p.w * p.w * eps * dphi * dphi + p.beta;
}

}  // namespace canodual
