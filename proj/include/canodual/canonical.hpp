#pragma once

#include "canodual/kernel.hpp"
#include "canodual/primal.hpp"

namespace canodual {

/// Sequential canonical transformation for a generic admissible kernel.
///
/// First level:  xi = w phi(||x - c||^2), sigma = xi - y, conjugate V*.
/// Second level: eps = ||x - c||^2, tau = w phi'(eps), conjugate U*.
/// The two levels combine into the total complementarity function, whose
/// stationary point in c yields the general dual function.

/// First-level pair (xi, sigma) produced by the geometric operator at c.
struct FirstLevelPair {
  double xi = 0.0;     // w phi(||x - c||^2)
  double sigma = 0.0;  // xi - y
};

/// Second-level pair (eps, tau).
struct SecondLevelPair {
  double eps = 0.0;  // ||x - c||^2
  double tau = 0.0;  // w phi'(eps)
};

FirstLevelPair first_level(const ProblemParams& p, const RadialKernel& kernel, double c);
SecondLevelPair second_level(const ProblemParams& p, const RadialKernel& kernel, double c);

/// Legendre conjugate of V(xi) = 1/2 (xi - y)^2:  V*(sigma) = 1/2 sigma^2 + y sigma.
double v_conjugate(double sigma, double y);

/// Legendre conjugate of U(eps) = w phi(eps), evaluated through the
/// phi'-inverse:  U*(tau) = tau eps(tau) - w phi(eps(tau)).
/// Throws DomainError when tau/w lies outside the range of phi'.
double u_conjugate(const RadialKernel& kernel, double w, double tau);

/// Second-level dual variable matched to sigma:
/// tau = w phi'(phi^{-1}((sigma + y) / w)).
/// sigma = -y (the s = 0 boundary) returns the limit value 0.
/// Throws DomainError when (sigma + y)/w falls outside the range of phi.
double tau_from_sigma(const RadialKernel& kernel, double w, double y, double sigma);

/// Total complementarity function
/// Xi(c, sigma, tau) = 1/2 c^2 (2 tau sigma + beta) - c (2 tau sigma x + f)
///                     - U*(tau) sigma - V*(sigma) + x^2 tau sigma.
/// Collapses to P(c) on the canonical manifold sigma = sigma(c), tau = tau(sigma).
double total_complementarity(const ProblemParams& p, const RadialKernel& kernel,
                             double c, double sigma, double tau);

/// d Xi / dc at fixed (sigma, tau); zero exactly at stationary_center.
double complementarity_center_slope(const ProblemParams& p, double c,
                                    double sigma, double tau);

/// Unique stationary c of Xi(., sigma, tau):  c = (2 tau x sigma + f) / (2 tau sigma + beta).
/// Throws SingularityError when |2 tau sigma + beta| < 1e-14.
double stationary_center(const ProblemParams& p, double sigma, double tau);

/// General dual function P^d(sigma) = Xi(stationary c, sigma, tau(sigma)).
/// sigma must lie in the open interval (-y, w - y) shrunk by
/// 1e-10 (1 + |w|); outside it throws DomainError, and at a vanishing
/// stationary denominator SingularityError propagates.
double dual_value_general(const ProblemParams& p, const RadialKernel& kernel,
                          double sigma);

}  // namespace canodual
