#include <doctest.h>

#include <cmath>
#include <limits>

#include "bohrkit/errors.hpp"
#include "bohrkit/radii.hpp"
#include "oracles.hpp"

using namespace bohrkit;

TEST_CASE("solve_bracketed examples") {
  const auto linear = solve_bracketed([](double x) { return x - 0.25; }, 0.0, 1.0, 1e-12);
  CHECK(linear.converged);
  CHECK(std::abs(linear.value - 0.25) <= 1e-12);

  const auto root2 = solve_bracketed([](double x) { return x * x - 2.0; }, 1.0, 2.0);
  CHECK(root2.converged);
  CHECK(std::abs(root2.value - std::sqrt(2.0)) <= 1e-12);
  CHECK(root2.bracket_hi - root2.bracket_lo <= 1e-12);
  CHECK(root2.value >= root2.bracket_lo);
  CHECK(root2.value <= root2.bracket_hi);

  const auto theorem_b = solve_bracketed(
      [](double x) { return 3.0 * (1.0 - x) * -std::log1p(-x) - 2.0 * x; }, 1e-6, 1.0 - 1e-9);
  CHECK(std::abs(theorem_b.value - 0.5335) <= 5e-4);
}

TEST_CASE("solve_bracketed error paths") {
  CHECK_THROWS_AS(solve_bracketed([](double x) { return x * x + 1.0; }, -1.0, 1.0), BracketingError);
  CHECK_THROWS_AS(solve_bracketed([](double) { return std::numeric_limits<double>::quiet_NaN(); }, 0.0, 1.0),
                  NumericalError);
  CHECK_THROWS_AS(solve_bracketed([](double x) { return x; }, 1.0, 0.0), PreconditionError);
  CHECK_THROWS_AS(solve_bracketed([](double x) { return x; }, -1.0, 1.0, 0.0), PreconditionError);
  // Root sitting on an endpoint.
  CHECK(solve_bracketed([](double x) { return x - 1.0; }, 0.0, 1.0).value == 1.0);
}

TEST_CASE("cesaro_radius") {
  CHECK(std::abs(cesaro_radius(DomainGamma(0.0)).value - 0.5335) <= 5e-4);
  CHECK(std::abs(cesaro_radius(DomainGamma(0.0)).value - oracle::kCesaroRadius0) <= 1e-12);
  CHECK(std::abs(cesaro_radius(DomainGamma(0.25)).value - oracle::kCesaroRadius025) <= 1e-12);
  CHECK(std::abs(cesaro_radius(DomainGamma(0.5)).value - oracle::kCesaroRadius05) <= 1e-12);
  CHECK(std::abs(cesaro_radius(DomainGamma(0.75)).value - oracle::kCesaroRadius075) <= 1e-12);
  CHECK(std::abs(cesaro_radius(DomainGamma(0.999999)).value - oracle::kCesaroRadiusNearOne) <= 1e-12);
  CHECK(cesaro_radius(DomainGamma(0.0)).value >= 0.533);
  CHECK(cesaro_radius(DomainGamma(0.0)).value <= 0.534);
}

TEST_CASE("bernardi_radius") {
  CHECK(std::abs(bernardi_radius(DomainGamma(0.0), 1.0).value - oracle::bernardi_radius_beta1(0.0)) <= 1e-11);
  CHECK(std::abs(bernardi_radius(DomainGamma(0.0), 1.0).value - oracle::kBernardiRadius_g0_b1) <= 1e-12);
  CHECK(std::abs(bernardi_radius(DomainGamma(0.2), 1.0).value - oracle::bernardi_radius_beta1(0.2)) <= 1e-11);
  CHECK(std::abs(bernardi_radius(DomainGamma(0.999999), 1.0).value - oracle::kBernardiRadiusNearOne_b1) <= 1e-12);
  CHECK(std::abs(bernardi_radius(DomainGamma(0.0), 2.0).value - oracle::kBernardiRadius_g0_b2) <= 1e-12);
  CHECK(std::abs(bernardi_radius(DomainGamma(0.0), 5.0).value - oracle::kBernardiRadius_g0_b5) <= 1e-12);
  CHECK(std::abs(bernardi_radius(DomainGamma(0.5), 0.5).value - oracle::kBernardiRadius_g05_b05) <= 1e-12);
  CHECK(bernardi_radius_equation(0.3, 2.0, 0.0).value == doctest::Approx(0.5));
  CHECK_THROWS_AS(bernardi_radius(DomainGamma(0.0), 0.0), DomainError);
  CHECK_THROWS_AS(bernardi_radius(DomainGamma(0.0), -1.0), DomainError);
}

TEST_CASE("bernardi_radius_classic") {
  CHECK(std::abs(bernardi_radius_classic(1.0, 1).value - oracle::bernardi_classic_beta1_m1()) <= 1e-11);
  CHECK(std::abs(bernardi_radius_classic(1.0, 1).value - oracle::kBernardiClassic_b1_m1) <= 1e-12);
  CHECK(std::abs(bernardi_radius_classic(1.0, 0).value - bernardi_radius(DomainGamma(0.0), 1.0).value) <= 1e-12);
  CHECK(bernardi_classic_equation(1.5, 0, 0.0).value == doctest::Approx(1.0 / 1.5));
  CHECK_NOTHROW(bernardi_radius_classic(-0.5, 1));
  CHECK_THROWS_AS(bernardi_radius_classic(-1.0, 1), DomainError);
  CHECK_THROWS_AS(bernardi_radius_classic(1.0, -1), DomainError);
}

TEST_CASE("bohr_radius_omega") {
  CHECK(bohr_radius_omega(DomainGamma(0.0)) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(bohr_radius_omega(DomainGamma(1.0 / 3.0)) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(bohr_radius_omega(DomainGamma(0.5)) == doctest::Approx(3.0 / 7.0).epsilon(1e-15));
}

TEST_CASE("cesaro_radius is strictly increasing in gamma") {
  double prev = 0.0;
  for (int k = 0; k <= 9; ++k) {
    const double v = cesaro_radius(DomainGamma(0.1 * k)).value;
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("bernardi_radius: increasing in gamma, decreasing in beta") {
  const double gammas[] = {0.0, 0.2, 0.4, 0.6, 0.8};
  const double betas[] = {0.5, 1.0, 2.0, 3.5, 5.0};
  double grid[5][5];
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) grid[i][j] = bernardi_radius(DomainGamma(gammas[i]), betas[j]).value;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      if (i > 0) CHECK(grid[i][j] > grid[i - 1][j]);
      if (j > 0) CHECK(grid[i][j] < grid[i][j - 1]);
    }
  }
  // Large beta approaches the identity-operator radius (1+gamma)/(3+gamma) from above.
  const double limit = bohr_radius_omega(DomainGamma(0.4));
  CHECK(bernardi_radius(DomainGamma(0.4), 1e4).value > limit);
  CHECK(bernardi_radius(DomainGamma(0.4), 1e4).value - limit < 1e-3);
}

TEST_CASE("radius certificates and bracket orientation") {
  for (double g : {0.0, 0.25, 0.5, 0.75}) {
    const auto r = cesaro_radius(DomainGamma(g));
    CHECK(r.converged);
    CHECK(r.residual <= 1e-10);
    CHECK(r.bracket_hi - r.bracket_lo <= 1e-12);
    CHECK(cesaro_radius_equation(g, r.bracket_lo) > 0.0);
    CHECK(cesaro_radius_equation(g, r.bracket_hi) < 0.0);
    for (double beta : {0.5, 1.0, 2.0, 5.0}) {
      const auto b = bernardi_radius(DomainGamma(g), beta);
      CHECK(b.converged);
      CHECK(b.residual <= 1e-10);
      CHECK(b.series_error <= 1e-13);
      CHECK(bernardi_radius_equation(g, beta, b.bracket_lo).value > 0.0);
      CHECK(bernardi_radius_equation(g, beta, b.bracket_hi).value < 0.0);
    }
  }
  const auto c = bernardi_radius_classic(2.0, 3);
  CHECK(c.residual <= 1e-10);
  CHECK(bernardi_classic_equation(2.0, 3, c.bracket_lo).value > 0.0);
  CHECK(bernardi_classic_equation(2.0, 3, c.bracket_hi).value < 0.0);
}
