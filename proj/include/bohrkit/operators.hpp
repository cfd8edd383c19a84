#pragma once

#include "bohrkit/series.hpp"

namespace bohrkit {

/// Parameters (beta, m) of the Bernardi operator; requires beta > -m, m >= 0.
class BernardiParams {
 public:
  BernardiParams(double beta, int m = 0);

  double beta() const noexcept { return beta_; }
  int m() const noexcept { return m_; }

 private:
  double beta_;
  int m_;
};

// Coefficient transforms ----------------------------------------------------

/// c_n = (1/(n+1)) sum_{k<=n} a_k.
TruncatedPowerSeries cesaro_transform(const TruncatedPowerSeries& s);

/// c_n = (1 + beta) a_n / (beta + n) for n >= m, zero below m.
/// Throws PreconditionError if any of a_0..a_{m-1} exceeds 1e-14 in modulus.
TruncatedPowerSeries bernardi_transform(const TruncatedPowerSeries& s, const BernardiParams& p);

// Majorants ------------------------------------------------------------------

/// sum_n (1/(n+1)) (sum_{k<=n} |a_k|) r^n with certified tail.
Certified cesaro_majorant(const TruncatedPowerSeries& s, double r);

/// sum_n |a_n| r^n / (n + beta), without the (1 + beta) prefactor.
Certified bernardi_majorant(const TruncatedPowerSeries& s, const BernardiParams& p, double r);

// Closed forms and special sums ---------------------------------------------

/// (1/r) ln(1/(1-r)), continuous at r = 0 with value 1.
double log_bound(double r);

/// sum_{n>=start} r^n / (n + beta). The truncation order is chosen so the
/// certified tail r^{N+1}/((N+1+beta)(1-r)) is at most `target`.
Certified lerch_tail_sum(double r, double beta, int start, double target = 1e-15);

// Quadrature oracles ---------------------------------------------------------

inline constexpr double kQuadratureTarget = 1e-10;

/// int_0^1 f(tz) / (1 - tz) dt with f the truncated series.
Complex cesaro_integral_oracle(const TruncatedPowerSeries& s, Complex z);

/// (1 + beta) int_0^1 f(tz) t^{beta-1} dt, the radial form of
/// (1 + beta) z^{-beta} int_0^z f(xi) xi^{beta-1} dxi.
Complex bernardi_integral_oracle(const TruncatedPowerSeries& s, Complex z,
                                 const BernardiParams& p);

}  // namespace bohrkit
