#pragma once

#include <functional>

#include "bohrkit/series.hpp"

namespace bohrkit {

/// Outcome of a bracketed root solve.
struct RadiusResult {
  double value = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double residual = 0.0;
  /// Certified truncation error of the equation at `value` (0 for closed forms).
  double series_error = 0.0;
  int iterations = 0;
  bool converged = false;
};

using ScalarFunction = std::function<double(double)>;

inline constexpr double kRadiusTolerance = 1e-12;

/// Bisection down to bracket width `tol`, then at most 8 Newton steps with a
/// centred-difference slope. A Newton iterate leaving the bracket reverts to
/// the bisection midpoint.
RadiusResult solve_bracketed(const ScalarFunction& g, double lo, double hi,
                             double tol = kRadiusTolerance);

/// (3 + gamma)(1 - x) ln(1/(1 - x)) - 2x.
double cesaro_radius_equation(double gamma, double x);

/// 1/beta - (2/(1+gamma)) sum_{n>=1} r^n/(n+beta), with the sum's certified error.
Certified bernardi_radius_equation(double gamma, double beta, double r);

/// x^{-m} F(x) where F(x) = x^m/(m+beta) - 2 sum_{n>=m+1} x^n/(n+beta).
Certified bernardi_classic_equation(double beta, int m, double x);

/// Positive root R_gamma of the Cesaro equation.
RadiusResult cesaro_radius(const DomainGamma& gamma, double tol = kRadiusTolerance);

/// R_{gamma,beta}; beta > 0.
RadiusResult bernardi_radius(const DomainGamma& gamma, double beta,
                             double tol = kRadiusTolerance);

/// R(beta) on the unit disk for functions with an m-fold zero at the origin.
RadiusResult bernardi_radius_classic(double beta, int m, double tol = kRadiusTolerance);

/// (1 + gamma)/(3 + gamma): Bohr radius of the identity on B(Omega_gamma).
double bohr_radius_omega(const DomainGamma& gamma) noexcept;

}  // namespace bohrkit
