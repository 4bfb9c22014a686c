#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "canodual/errors.hpp"
#include "canodual/oracle.hpp"
#include "canodual/primal.hpp"
#include "canodual/verify.hpp"

using namespace canodual;

TEST_CASE("primal value spot checks") {
  const ProblemParams p = instance_case1();
  const GaussianKernel k(p.alpha);
  // eps = 0 at c = x, so the residual is w - y
  CHECK(primal_value(p, k, 1.0) == doctest::Approx(0.55).epsilon(1e-14));
  // far from x the kernel vanishes and the quadratic term dominates
  CHECK(primal_value(p, k, 100.0) == doctest::Approx(500.5).epsilon(1e-12));

  ProblemParams flat{2.0, 1.5, 1.5, 0.8, 0.3, 0.0};  // w = y kills the residual at c = x
  const GaussianKernel k2(flat.alpha);
  CHECK(primal_value(flat, k2, flat.x) ==
        doctest::Approx(0.5 * flat.beta * flat.x * flat.x).epsilon(1e-14));
  CHECK(primal_gradient(flat, k2, flat.x) ==
        doctest::Approx(flat.beta * flat.x).epsilon(1e-14));
}

TEST_CASE("gradient is nonzero at the recovered pseudo center") {
  const ProblemParams p = instance_case1();
  const GaussianKernel k(p.alpha);
  // c = F/G at sigma_f; only the matched-partner configuration makes it critical
  CHECK(std::fabs(primal_gradient(p, k, 0.833333)) > 0.1);
}

TEST_CASE("gradient vanishes at oracle critical points") {
  for (const ProblemParams& p : {instance_case1(), instance_case2()}) {
    const GaussianKernel k(p.alpha);
    const auto points = primal_criticals_bruteforce(p, k, OracleConfig::defaults(p));
    CHECK(!points.empty());
    for (const OraclePoint& pt : points) {
      CHECK(std::fabs(primal_gradient(p, k, pt.c)) <= 1e-8);
    }
  }
}

TEST_CASE("gradient against central differences of the value") {
  const ProblemParams p = instance_case1();
  const GaussianKernel k(p.alpha);
  for (double c : {-2.0, -1.0, 0.0, 0.5, 1.0, 2.0}) {
    const double h = 1e-6 * (1.0 + std::fabs(c));
    const double fd = (primal_value(p, k, c + h) - primal_value(p, k, c - h)) / (2.0 * h);
    const double g = primal_gradient(p, k, c);
    CHECK(std::fabs(g - fd) <= 1e-6 * (1.0 + std::fabs(g)));
  }
}

TEST_CASE("hessian spot value and finite differences") {
  const ProblemParams p = instance_case1();
  const GaussianKernel k(p.alpha);
  // at c = x the first chain-rule term dies with u = 0
  CHECK(primal_hessian(p, k, 1.0) == doctest::Approx(-3.9).epsilon(1e-13));

  CHECK(fd2_check([&](double c) { return primal_value(p, k, c); },
                  [&](double c) { return primal_hessian(p, k, c); },
                  {-3.0, 4.0}, 100) <= 1e-5);
  CHECK(fd_check([&](double c) { return primal_gradient(p, k, c); },
                 [&](double c) { return primal_hessian(p, k, c); },
                 {-3.0, 4.0}, 100) <= 1e-5);
}

TEST_CASE("hessian reduces to beta as w vanishes") {
  ProblemParams p{1.0, 1.0, 1e-12, 0.7, 0.4, 0.0};
  const GaussianKernel k(p.alpha);
  for (double c : {-1.0, 0.0, 0.7, 2.5}) {
    CHECK(primal_hessian(p, k, c) == doctest::Approx(p.beta).epsilon(1e-10));
  }
}

TEST_CASE("coercivity and sign changes around critical points") {
  const ProblemParams p = instance_case1();
  const GaussianKernel k(p.alpha);
  const auto points = primal_criticals_bruteforce(p, k, OracleConfig::defaults(p));
  for (const OraclePoint& pt : points) {
    CHECK(primal_value(p, k, 1e6) > pt.value);
    CHECK(primal_value(p, k, -1e6) > pt.value);
    const double before = primal_gradient(p, k, pt.c - 1e-4);
    const double after = primal_gradient(p, k, pt.c + 1e-4);
    CHECK(before * after < 0.0);
  }
}

TEST_CASE("parameter validation") {
  ProblemParams p = instance_case1();
  p.alpha = 0.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = instance_case1();
  p.beta = -0.1;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = instance_case1();
  p.w = 0.0;
  CHECK_THROWS_AS(p.validate(), DomainError);

  ProblemParams off_regime{1.0, -1.0, 2.0, 0.7, 0.1, 0.0};  // warning only
  CHECK_NOTHROW(off_regime.validate());
  CHECK(!off_regime.canonical_regime());
  CHECK(instance_case1().canonical_regime());

  ProblemParams flipped{1.0, -1.0, -2.0, 0.7, 0.1, 0.0};
  const ProblemParams norm = flipped.normalized();
  CHECK(norm.w == 2.0);
  CHECK(norm.y == 1.0);
  CHECK(norm.canonical_regime());
}
