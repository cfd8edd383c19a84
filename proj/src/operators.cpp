#include "bohrkit/operators.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "bohrkit/errors.hpp"

namespace bohrkit {

namespace {

void require_radius(double r) {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("r must lie in [0,1)");
}

void require_interior(Complex z) {
  if (!(std::abs(z) < 1.0)) throw DomainError("z must lie in the open unit disk");
}

// Rejects series whose first m coefficients are not (numerically) zero.
void require_zero_of_order(const TruncatedPowerSeries& s, int m) {
  const auto c = s.coeffs();
  for (std::size_t n = 0; n < static_cast<std::size_t>(m) && n < c.size(); ++n) {
    if (std::abs(c[n]) > 1e-14) {
      throw PreconditionError("Bernardi operator with m = " + std::to_string(m) +
                              " needs a_n = 0 for n < m (a_" + std::to_string(n) + " != 0)");
    }
  }
}

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      carry_ += (sum_ - t) + x;
    else
      carry_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

constexpr unsigned kMaxQuadratureDepth = 15;  // 15-point rule: < 10^6 evaluations
constexpr double kQuadratureRelTol = 1e-13;

template <typename F>
Complex integrate_unit_interval(F&& f, const char* what, Complex z) {
  using boost::math::quadrature::gauss_kronrod;
  double error = 0.0;
  const Complex value =
      gauss_kronrod<double, 15>::integrate(f, 0.0, 1.0, kMaxQuadratureDepth, kQuadratureRelTol,
                                           &error);
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()) ||
      !(error <= kQuadratureTarget)) {
    std::ostringstream msg;
    msg << what << " quadrature did not converge at z = " << z << ": error estimate " << error
        << " exceeds " << kQuadratureTarget;
    throw NumericalError(msg.str());
  }
  return value;
}

// Double-exponential rule for integrands with an algebraic endpoint singularity.
template <typename F>
Complex integrate_unit_interval_singular(F&& f, const char* what, Complex z) {
  boost::math::quadrature::tanh_sinh<double> rule;
  double err_re = 0.0, err_im = 0.0;
  const double re = rule.integrate([&](double t) { return f(t).real(); }, 0.0, 1.0,
                                   kQuadratureRelTol, &err_re);
  const double im = rule.integrate([&](double t) { return f(t).imag(); }, 0.0, 1.0,
                                   kQuadratureRelTol, &err_im);
  const double error = std::hypot(err_re, err_im);
  if (!std::isfinite(re) || !std::isfinite(im) || !(error <= kQuadratureTarget)) {
    std::ostringstream msg;
    msg << what << " quadrature did not converge at z = " << z << ": error estimate " << error
        << " exceeds " << kQuadratureTarget;
    throw NumericalError(msg.str());
  }
  return {re, im};
}

}  // namespace

BernardiParams::BernardiParams(double beta, int m) : beta_(beta), m_(m) {
  if (m < 0) throw DomainError("m must be a nonnegative integer");
  if (!std::isfinite(beta) || !(beta > -static_cast<double>(m)))
    throw DomainError("beta must exceed -m");
}

TruncatedPowerSeries cesaro_transform(const TruncatedPowerSeries& s) {
  const auto a = s.coeffs();
  std::vector<Complex> c(a.size());
  Complex prefix{};
  for (std::size_t n = 0; n < a.size(); ++n) {
    prefix += a[n];
    c[n] = prefix / static_cast<double>(n + 1);
  }
  // For n > N: |c_n| <= (|P_N| + (n - N) B)/(n + 1), monotone in n between
  // its value at N + 1 and the limit B.
  const double n2 = static_cast<double>(a.size() + 1);
  double tail = std::max((std::abs(prefix) + s.tail_bound()) / n2, s.tail_bound());
  if (s.is_schur()) tail = std::min(tail, 1.0);
  return TruncatedPowerSeries(std::move(c), tail);
}

Certified cesaro_majorant(const TruncatedPowerSeries& s, double r) {
  require_radius(r);
  const auto a = s.coeffs();
  CompensatedSum sum;
  double prefix = 0.0;
  double power = 1.0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    prefix += std::abs(a[n]);
    sum.add(prefix / static_cast<double>(n + 1) * power);
    power *= r;
  }
  const double n2 = static_cast<double>(a.size() + 1);
  double tail = std::max((prefix + s.tail_bound()) / n2, s.tail_bound());
  if (s.is_schur()) tail = std::min(tail, 1.0);
  const double error = (tail == 0.0 || r == 0.0) ? 0.0 : tail * power / (1.0 - r);
  return {sum.value(), error};
}

TruncatedPowerSeries bernardi_transform(const TruncatedPowerSeries& s, const BernardiParams& p) {
  require_zero_of_order(s, p.m());
  const double beta = p.beta();
  const auto a = s.coeffs();
  std::vector<Complex> c(a.size(), Complex{});
  for (std::size_t n = static_cast<std::size_t>(p.m()); n < a.size(); ++n)
    c[n] = (1.0 + beta) * a[n] / (beta + static_cast<double>(n));
  const double first_tail = static_cast<double>(std::max<std::size_t>(a.size(), p.m()));
  const double tail = std::abs(1.0 + beta) * s.tail_bound() / (first_tail + beta);
  return TruncatedPowerSeries(std::move(c), tail);
}

Certified bernardi_majorant(const TruncatedPowerSeries& s, const BernardiParams& p, double r) {
  require_radius(r);
  require_zero_of_order(s, p.m());
  const double beta = p.beta();
  const auto a = s.coeffs();
  CompensatedSum sum;
  double power = 1.0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    if (n >= static_cast<std::size_t>(p.m()))
      sum.add(std::abs(a[n]) * power / (static_cast<double>(n) + beta));
    power *= r;
  }
  const double first_tail = static_cast<double>(std::max<std::size_t>(a.size(), p.m()));
  const double error = (s.tail_bound() == 0.0 || r == 0.0)
                           ? 0.0
                           : s.tail_bound() * power / ((first_tail + beta) * (1.0 - r));
  return {sum.value(), error};
}

double log_bound(double r) {
  require_radius(r);
  if (r < 1e-4) {
    // 1 + r/2 + r^2/3 + r^3/4 + r^4/5 + r^5/6
    double acc = 0.0;
    for (int k = 6; k >= 1; --k) acc = acc * r + 1.0 / k;
    return acc;
  }
  return -std::log1p(-r) / r;
}

Certified lerch_tail_sum(double r, double beta, int start, double target) {
  require_radius(r);
  if (start < 0) throw DomainError("start index must be nonnegative");
  const double shift = static_cast<double>(start) + beta;
  if (!(shift > 0.0)) throw DomainError("beta must exceed -start");
  if (r == 0.0) return {start == 0 ? 1.0 / beta : 0.0, 0.0};

  const std::size_t extra = truncation_order(r, 1.0 / shift, target);
  const std::size_t last = std::max<std::size_t>(extra, static_cast<std::size_t>(start));
  CompensatedSum sum;
  double power = std::pow(r, start);
  for (std::size_t n = static_cast<std::size_t>(start); n <= last; ++n) {
    sum.add(power / (static_cast<double>(n) + beta));
    power *= r;
  }
  const double error = power / ((static_cast<double>(last + 1) + beta) * (1.0 - r));
  return {sum.value(), error};
}

Complex cesaro_integral_oracle(const TruncatedPowerSeries& s, Complex z) {
  require_interior(z);
  auto integrand = [&](double t) -> Complex {
    const Complex w = t * z;
    return s.evaluate(w) / (1.0 - w);
  };
  return integrate_unit_interval(integrand, "Cesaro", z);
}

Complex bernardi_integral_oracle(const TruncatedPowerSeries& s, Complex z,
                                 const BernardiParams& p) {
  require_interior(z);
  require_zero_of_order(s, p.m());
  const double beta = p.beta();
  const int m = p.m();
  const auto a = s.coeffs();
  if (z == Complex{}) {
    return m == 0 ? (1.0 + beta) * a[0] / beta : Complex{};
  }
  // f(tz) t^{beta-1} = g(t) t^{m+beta-1} with g(t) = sum_{n>=m} a_n z^n t^{n-m}.
  std::vector<Complex> shifted;
  Complex zn = std::pow(z, m);
  for (std::size_t n = static_cast<std::size_t>(m); n < a.size(); ++n) {
    shifted.push_back(a[n] * zn);
    zn *= z;
  }
  auto g = [&](double t) -> Complex {
    Complex acc{};
    for (auto it = shifted.rbegin(); it != shifted.rend(); ++it) acc = acc * t + *it;
    return acc;
  };
  const double order = static_cast<double>(m) + beta;
  auto weighted = [&](double t) -> Complex { return g(t) * std::pow(t, order - 1.0); };
  Complex integral;
  if (order >= 1.0 && order == std::floor(order)) {
    integral = integrate_unit_interval(weighted, "Bernardi", z);
  } else if (order < 1.0) {
    // t = u^{1/order} removes the blow-up of t^{order-1}.
    auto smooth = [&](double u) -> Complex { return g(std::pow(u, 1.0 / order)) / order; };
    integral = integrate_unit_interval_singular(smooth, "Bernardi", z);
  } else {
    integral = integrate_unit_interval_singular(weighted, "Bernardi", z);
  }
  return (1.0 + beta) * integral;
}

}  // namespace bohrkit
