#pragma once

#include "canodual/kernel.hpp"

namespace canodual {

/// One training instance of the single-neuron regression problem
///
///   P(c) = 1/2 (w phi(||x - c||^2) - y)^2 + 1/2 beta c^2 - f c.
///
/// x is the sample input, y the target, w the fixed output weight, alpha the
/// Gaussian width, beta the center regularization, and f an optional linear
/// coefficient (normally zero).
struct ProblemParams {
  double x = 0.0;
  double y = 0.0;
  double w = 1.0;
  double alpha = 1.0;
  double beta = 0.0;
  double f = 0.0;

  /// w*y > 0 and |y| < |w|: the regime in which the error w*phi - y can be
  /// driven to zero and the dual analysis is meaningful.
  bool canonical_regime() const;

  /// Throws DomainError for alpha <= 0, beta < 0 or w == 0; a violated
  /// canonical regime only logs a warning.
  void validate() const;

  /// Sign-normalized copy: w < 0 flips the signs of both w and y, which
  /// leaves P(c) unchanged.
  ProblemParams normalized() const;
};

/// P(c); defined for every real c.
double primal_value(const ProblemParams& p, const RadialKernel& kernel, double c);

/// dP/dc = -2 w (x - c) phi'(eps) (w phi(eps) - y) + beta c - f,  eps = (x - c)^2.
double primal_gradient(const ProblemParams& p, const RadialKernel& kernel, double c);

/// d2P/dc2, assembled by the chain rule from phi, phi' and phi''.
double primal_hessian(const ProblemParams& p, const RadialKernel& kernel, double c);

}  // namespace canodual
