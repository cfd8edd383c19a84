#include "bohrkit/radii.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bohrkit/errors.hpp"
#include "bohrkit/operators.hpp"

namespace bohrkit {

namespace {

constexpr int kMaxBisections = 2000;
constexpr int kNewtonSteps = 8;
// Lerch sums inside the radius equations are truncated well below the 1e-13
// certificate so the solver sees an essentially exact function.
constexpr double kEquationSumTarget = 1e-15;

double checked(const ScalarFunction& g, double x) {
  const double v = g(x);
  if (!std::isfinite(v)) throw NumericalError("non-finite function value at x = " + std::to_string(x));
  return v;
}

bool same_sign(double a, double b) { return (a > 0.0) == (b > 0.0); }

// Moves hi toward 1 until the (decreasing) equation turns negative.
double expand_upper_bracket(const ScalarFunction& g, double& lo) {
  double hi = 0.5;
  while (checked(g, hi) >= 0.0) {
    lo = hi;
    hi = 0.5 * (1.0 + hi);
    if (hi > 1.0 - 1e-6) throw BracketingError("radius equation has no sign change below 1 - 1e-6");
  }
  return hi;
}

}  // namespace

RadiusResult solve_bracketed(const ScalarFunction& g, double lo, double hi, double tol) {
  if (!(lo < hi)) throw PreconditionError("bracket requires lo < hi");
  if (!(tol > 0.0)) throw PreconditionError("tolerance must be positive");

  double g_lo = checked(g, lo);
  double g_hi = checked(g, hi);
  RadiusResult out;
  if (g_lo == 0.0 || g_hi == 0.0) {
    const double x = g_lo == 0.0 ? lo : hi;
    out.value = out.bracket_lo = out.bracket_hi = x;
    out.converged = true;
    return out;
  }
  if (same_sign(g_lo, g_hi)) {
    throw BracketingError("no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) +
                          "]");
  }

  int iterations = 0;
  bool exact = false;
  while (hi - lo > tol && iterations < kMaxBisections) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;  // adjacent doubles
    const double g_mid = checked(g, mid);
    ++iterations;
    if (g_mid == 0.0) {
      lo = hi = mid;
      exact = true;
      break;
    }
    if (same_sign(g_mid, g_lo)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  const double mid = lo + 0.5 * (hi - lo);
  out.bracket_lo = lo;
  out.bracket_hi = hi;
  out.converged = hi - lo <= tol || std::nextafter(lo, hi) >= hi;

  double x = mid;
  if (!exact) {
    double fx = checked(g, x);
    for (int step = 0; step < kNewtonSteps && fx != 0.0; ++step) {
      const double h = 1e-7 * std::max(1.0, std::abs(x));
      const double slope = (checked(g, x + h) - checked(g, x - h)) / (2.0 * h);
      ++iterations;
      if (slope == 0.0 || !std::isfinite(slope)) break;
      const double next = x - fx / slope;
      if (!(next >= lo && next <= hi)) {
        x = mid;
        break;
      }
      const bool stalled = std::abs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() *
                                                       std::abs(x);
      x = next;
      fx = checked(g, x);
      if (stalled) break;
    }
  }
  out.value = x;
  out.residual = std::abs(checked(g, x));
  out.iterations = iterations;
  return out;
}

double cesaro_radius_equation(double gamma, double x) {
  return (3.0 + gamma) * (1.0 - x) * -std::log1p(-x) - 2.0 * x;
}

Certified bernardi_radius_equation(double gamma, double beta, double r) {
  const auto sum = lerch_tail_sum(r, beta, 1, kEquationSumTarget);
  const double scale = 2.0 / (1.0 + gamma);
  return {1.0 / beta - scale * sum.value, scale * sum.error};
}

Certified bernardi_classic_equation(double beta, int m, double x) {
  // x^{-m} sum_{n>=m+1} x^n/(n+beta) = sum_{j>=1} x^j/(j + m + beta)
  const double shift = static_cast<double>(m) + beta;
  const auto sum = lerch_tail_sum(x, shift, 1, kEquationSumTarget);
  return {1.0 / shift - 2.0 * sum.value, 2.0 * sum.error};
}

RadiusResult cesaro_radius(const DomainGamma& gamma, double tol) {
  const double g = gamma.gamma();
  // x = 0 is a trivial root; the slope there is 1 + gamma > 0.
  return solve_bracketed([g](double x) { return cesaro_radius_equation(g, x); }, 1e-6,
                         1.0 - 1e-9, tol);
}

RadiusResult bernardi_radius(const DomainGamma& gamma, double beta, double tol) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("beta must be positive");
  const double g = gamma.gamma();
  const ScalarFunction eq = [g, beta](double r) { return bernardi_radius_equation(g, beta, r).value; };
  double lo = 0.0;
  const double hi = expand_upper_bracket(eq, lo);
  auto result = solve_bracketed(eq, lo, hi, tol);
  result.series_error = bernardi_radius_equation(g, beta, result.value).error;
  return result;
}

RadiusResult bernardi_radius_classic(double beta, int m, double tol) {
  [[maybe_unused]] const BernardiParams params(beta, m);  // validates beta > -m, m >= 0
  const ScalarFunction eq = [beta, m](double x) { return bernardi_classic_equation(beta, m, x).value; };
  double lo = 0.0;
  const double hi = expand_upper_bracket(eq, lo);
  auto result = solve_bracketed(eq, lo, hi, tol);
  result.series_error = bernardi_classic_equation(beta, m, result.value).error;
  return result;
}

double bohr_radius_omega(const DomainGamma& gamma) noexcept {
  return (1.0 + gamma.gamma()) / (3.0 + gamma.gamma());
}

}  // namespace bohrkit
