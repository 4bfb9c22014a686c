#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "canodual/canonical.hpp"
#include "canodual/dual_gaussian.hpp"
#include "canodual/errors.hpp"
#include "canodual/oracle.hpp"
#include "canodual/verify.hpp"

using namespace canodual;

TEST_CASE("center curvature values and roots") {
  const DualLandscape L(instance_case1());
  // vertex of the parabola: beta + y^2/(4 alpha^2)
  CHECK(L.center_curvature(-0.5) == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(L.center_curvature(0.0) == doctest::Approx(0.1).epsilon(1e-14));

  const auto& roots = L.partition().g_roots;
  REQUIRE(roots.size() == 1);
  CHECK(roots[0] == doctest::Approx(0.047722557505166185).epsilon(1e-12));
  // the quadratic's lower root sits below -y, outside the domain
  const double lower = 0.5 * (-1.0 - std::sqrt(1.0 + 4.0 * 0.5 * 0.1));
  CHECK(lower < -1.0);
  CHECK(std::fabs(L.center_curvature(roots[0])) <= 1e-13);
}

TEST_CASE("center load values") {
  const DualLandscape L(instance_case1());
  // plain polynomials: no domain restriction, both parabola roots give zero
  CHECK(L.center_load(0.0) == 0.0);
  CHECK(L.center_load(-1.0) == 0.0);
  CHECK(L.center_load_off(0.0 + 1.0) == 0.0);       // sigma = 0
  CHECK(std::fabs(L.center_load_off(1e-300)) < 1e-290);  // sigma -> -y limit
  CHECK(L.center_load(-0.5) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("dual value agrees with the general transformation path") {
  const ProblemParams p = instance_case1();
  const GaussianKernel k(p.alpha);
  const DualLandscape L(p);
  for (double sigma : {-0.5, -0.8, -0.2, 0.3, 0.9}) {
    CHECK(std::fabs(L.value(sigma) - dual_value_general(p, k, sigma)) <=
          1e-10 * (1.0 + std::fabs(L.value(sigma))));
  }
}

TEST_CASE("dual value stays finite at the upper boundary") {
  const DualLandscape L(instance_case1());
  // s -> 1 kills the log term: -F^2/(2G) + sigma^2/2 - x^2(sigma^2+y sigma)/(2 a^2)
  const double limit = -0.5 * 16.0 / -3.9 + 0.5 - 2.0;
  CHECK(L.value(1.0 - 1e-9) == doctest::Approx(limit).epsilon(1e-6));
}

TEST_CASE("dual slope vanishes exactly at the pseudo point") {
  for (const ProblemParams& p :
       {instance_case1(), instance_case2(), instance_case4()}) {
    const DualLandscape L(p);
    CHECK(L.slope_off(0.5 * p.y) == 0.0);
  }
}

TEST_CASE("dual slope brackets the near-boundary root") {
  const DualLandscape L(instance_case2());
  CHECK(L.slope_off(1e-8) < 0.0);
  CHECK(L.slope_off(1e-6) > 0.0);  // root at t ~ 2.25e-7, sigma ~ -0.999999
}

TEST_CASE("dual second derivative at the pseudo point") {
  const ProblemParams p = instance_case1();
  const DualLandscape L(p);
  // independent evaluation of the substituted closed form
  const double bracket = p.beta + p.y * p.y / (4.0 * p.alpha * p.alpha);
  const double lean = p.x * p.beta / bracket;
  const double direct = -(2.0 * std::log(p.y / (2.0 * p.w)) +
                          lean * lean / (p.alpha * p.alpha));
  CHECK(direct == doctest::Approx(2.717033166684226).epsilon(1e-12));
  CHECK(L.curvature(-0.5) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("dual derivatives against finite differences") {
  const DualLandscape L(instance_case1());
  for (const Interval& sub : {Interval{-0.95, 0.0}, Interval{0.09, 0.95}}) {
    CHECK(fd_check([&](double s) { return L.value(s); },
                   [&](double s) { return L.slope(s); }, sub, 100) <= 1e-6);
    CHECK(fd_check([&](double s) { return L.slope(s); },
                   [&](double s) { return L.curvature(s); }, sub, 100) <= 1e-6);
  }
}

TEST_CASE("recovered center") {
  const DualLandscape L(instance_case1());
  CHECK(L.recover_center(0.0) == 0.0);
  CHECK(L.recover_center(-0.5) == doctest::Approx(0.5 / 0.6).epsilon(1e-14));
  CHECK_THROWS_AS(L.recover_center(L.partition().g_roots[0]), SingularityError);
}

TEST_CASE("region partition of the reference instance") {
  const DualLandscape L(instance_case1());
  const RegionPartition& part = L.partition();
  const double root = 0.047722557505166185;
  REQUIRE(part.s_plus.size() == 1);
  REQUIRE(part.s_minus.size() == 1);
  CHECK(part.s_a.lo == doctest::Approx(-1.0));
  CHECK(part.s_a.hi == doctest::Approx(1.0));
  CHECK(part.s_plus[0].lo == doctest::Approx(-1.0));
  CHECK(part.s_plus[0].hi == doctest::Approx(root).epsilon(1e-10));
  CHECK(part.s_minus[0].lo == doctest::Approx(root).epsilon(1e-10));
  CHECK(part.s_minus[0].hi == doctest::Approx(1.0));
  REQUIRE(part.s_sharp.size() == 1);
  CHECK(part.s_sharp[0].lo == doctest::Approx(-0.5));
  CHECK(part.s_sharp[0].hi == doctest::Approx(root).epsilon(1e-10));
  REQUIRE(part.s_flat.size() == 1);
  CHECK(part.s_flat[0].lo == doctest::Approx(-1.0));
  CHECK(part.s_flat[0].hi == doctest::Approx(-0.5));
}

TEST_CASE("partition properties over random instances") {
  std::mt19937_64 rng(3);
  const auto uniform = [&rng](double lo, double hi) {
    return lo + (hi - lo) * ((rng() >> 11) * 0x1.0p-53);
  };
  for (int i = 0; i < 50; ++i) {
    ProblemParams p;
    p.y = uniform(0.2, 1.5);
    p.w = uniform(1.2, 3.0);
    p.x = uniform(0.0, 10.0);
    p.beta = uniform(0.01, 0.5);
    p.alpha = uniform(0.4, 1.2);
    const DualLandscape L(p);
    const RegionPartition& part = L.partition();

    // sigma_f always lies in S+ with positive curvature there
    const double sf = L.pseudo_sigma();
    bool sf_in_plus = false;
    for (const Interval& iv : part.s_plus) {
      if (iv.contains_interior(sf)) sf_in_plus = true;
    }
    CHECK(sf_in_plus);
    CHECK(L.center_curvature(sf) > 0.0);

    // the pieces cover S_a
    double covered = 0.0;
    for (const Interval& iv : part.s_plus) covered += iv.width();
    for (const Interval& iv : part.s_minus) covered += iv.width();
    CHECK(covered == doctest::Approx(part.s_a.width()).epsilon(1e-12));

    // sharp and flat tile s_plus
    double tiles = 0.0;
    for (const Interval& iv : part.s_sharp) tiles += iv.width();
    for (const Interval& iv : part.s_flat) tiles += iv.width();
    double plus = 0.0;
    for (const Interval& iv : part.s_plus) plus += iv.width();
    CHECK(tiles == doctest::Approx(plus).epsilon(1e-12));
  }
}

TEST_CASE("large beta leaves S- empty") {
  const DualLandscape L(instance_case5());  // beta = 5 > w(w-y)/alpha^2 = 4
  CHECK(L.partition().g_roots.empty());
  CHECK(L.partition().s_minus.empty());
  CHECK(L.partition().s_plus.size() == 1);
}

TEST_CASE("threshold abscissa") {
  const DualLandscape L(instance_case1());
  REQUIRE(L.x_threshold().has_value());
  CHECK(*L.x_threshold() == doctest::Approx(std::sqrt(std::log(4.0))).epsilon(1e-13));
  CHECK(*L.x_threshold() == doctest::Approx(1.1774100225154747).epsilon(1e-12));

  // inverse construction: y = 2w e^{-1/(2 alpha^2)} makes x_o = 1
  ProblemParams inv = instance_case1();
  inv.y = 2.0 * inv.w * std::exp(-1.0 / (2.0 * inv.alpha * inv.alpha));
  const DualLandscape L2(inv);
  REQUIRE(L2.x_threshold().has_value());
  CHECK(*L2.x_threshold() == doctest::Approx(1.0).epsilon(1e-12));

  ProblemParams big = instance_case1();
  big.y = 4.0;  // y = 2w: nonpositive radicand
  CHECK(!DualLandscape(big).x_threshold().has_value());
  big.y = 5.0;
  CHECK(!DualLandscape(big).x_threshold().has_value());
}

TEST_CASE("singularity and domain guards") {
  const DualLandscape L(instance_case1());
  const double root = L.partition().g_roots[0];
  CHECK_THROWS_AS(L.value(root + 1e-10), SingularityError);
  CHECK_THROWS_AS(L.value(-1.0 + 1e-10), SingularityError);
  CHECK_THROWS_AS(L.value(-1.5), DomainError);
  CHECK_THROWS_AS(L.value(1.0), DomainError);
  CHECK_THROWS_AS(L.value_off(-0.1), DomainError);
  CHECK_THROWS_AS(L.value_off(0.0), DomainError);
  CHECK_THROWS_AS(L.value_off(2.0), DomainError);
  CHECK_NOTHROW(L.value_off(1e-20));  // offset path reaches below the sigma guard
}

TEST_CASE("boundary approach: finite limit, log-diverging slope") {
  const DualLandscape L(instance_case1());
  const double y = L.params().y;
  CHECK(std::fabs(L.value_off(1e-12) - 0.5 * y * y) <= 1e-9);
  double prev = L.value_off(1e-12);
  for (int i = 1; i <= 20; ++i) {
    const double t = std::pow(10.0, -12.0 + 9.0 * i / 20.0);  // up to 1e-3
    const double cur = L.value_off(t);
    CHECK(cur < prev);  // decreasing while moving away from the boundary
    prev = cur;
  }
  CHECK(L.slope_off(1e-12) < L.slope_off(1e-6));
  CHECK(L.slope_off(1e-12) < -25.0);
}

TEST_CASE("regime rejection") {
  ProblemParams bad = instance_case1();
  bad.y = -1.0;
  CHECK_THROWS_AS((DualLandscape{bad}), RegimeError);
  bad = instance_case1();
  bad.w = -2.0;
  CHECK_THROWS_AS((DualLandscape{bad}), RegimeError);
}
