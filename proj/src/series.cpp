#include "bohrkit/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "bohrkit/errors.hpp"

namespace bohrkit {

DomainGamma::DomainGamma(double gamma) : gamma_(gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw DomainError("gamma must lie in [0,1)");
}

bool DomainGamma::contains(Complex z) const noexcept {
  const double shift = gamma_ / (1.0 - gamma_);
  return std::abs(z + shift) < 1.0 / (1.0 - gamma_);
}

TruncatedPowerSeries::TruncatedPowerSeries(std::vector<Complex> coeffs, double tail_bound,
                                           SeriesClass kind)
    : coeffs_(std::move(coeffs)), tail_bound_(tail_bound), kind_(kind) {
  if (coeffs_.empty()) throw PreconditionError("power series needs at least one coefficient");
  for (const auto& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw PreconditionError("power series coefficients must be finite");
  }
  if (!(tail_bound_ >= 0.0) || !std::isfinite(tail_bound_))
    throw PreconditionError("tail bound must be finite and nonnegative");
  if (kind_ == SeriesClass::Schur && tail_bound_ > 1.0)
    throw PreconditionError("Schur-class series must have tail bound <= 1");
}

TruncatedPowerSeries TruncatedPowerSeries::constant(Complex c, SeriesClass kind) {
  return TruncatedPowerSeries({c}, 0.0, kind);
}

Complex TruncatedPowerSeries::evaluate(Complex z) const noexcept {
  Complex acc{0.0, 0.0};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double TruncatedPowerSeries::tail_error(double r) const {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("r must lie in [0,1)");
  if (tail_bound_ == 0.0 || r == 0.0) return 0.0;
  return tail_bound_ * std::pow(r, static_cast<double>(order() + 1)) / (1.0 - r);
}

TruncatedPowerSeries TruncatedPowerSeries::axpy(Complex alpha,
                                                const TruncatedPowerSeries& other) const {
  std::vector<Complex> out(std::max(coeffs_.size(), other.coeffs_.size()), Complex{});
  for (std::size_t n = 0; n < coeffs_.size(); ++n) out[n] += alpha * coeffs_[n];
  for (std::size_t n = 0; n < other.coeffs_.size(); ++n) out[n] += other.coeffs_[n];
  // Shorter operand's stored coefficients above its order are bounded by its tail.
  double tail = std::abs(alpha) * tail_bound_ + other.tail_bound_;
  const std::size_t top = out.size() - 1;
  if (order() < top) {
    double m = 0.0;
    for (std::size_t n = order() + 1; n <= top; ++n) m = std::max(m, std::abs(other.coeffs_[n]));
    tail = std::max(tail, std::abs(alpha) * tail_bound_ + m);
  }
  return TruncatedPowerSeries(std::move(out), tail);
}

std::size_t truncation_order(double r, double bound, double target) {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("r must lie in [0,1)");
  if (!(target > 0.0)) throw DomainError("truncation target must be positive");
  if (bound == 0.0 || r == 0.0) return 0;
  // bound r^{N+1}/(1-r) <= target  <=>  N+1 >= log(target (1-r)/bound)/log r
  const double needed = std::log(target * (1.0 - r) / bound) / std::log(r);
  const double n = std::max(0.0, std::ceil(needed) - 1.0);
  if (n > static_cast<double>(kMaxTruncationOrder)) {
    throw NumericalError("truncation order cap " + std::to_string(kMaxTruncationOrder) +
                         " reached at r = " + std::to_string(r));
  }
  auto order = static_cast<std::size_t>(n);
  // Guard against log rounding at the boundary.
  while (order < kMaxTruncationOrder &&
         bound * std::pow(r, static_cast<double>(order + 1)) / (1.0 - r) > target)
    ++order;
  return order;
}

Certified majorant_eval(const TruncatedPowerSeries& s, double r) {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("r must lie in [0,1)");
  double value = 0.0;
  const auto c = s.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) value = value * r + std::abs(*it);
  return {value, s.tail_error(r)};
}

TruncatedPowerSeries affine_compose(const TruncatedPowerSeries& h, const DomainGamma& gamma,
                                    int order) {
  if (order < 0) throw DomainError("truncation order must be nonnegative");
  const double g = gamma.gamma();
  const auto b = h.coeffs();
  const std::size_t k_top = h.order();
  const auto n_top = static_cast<std::size_t>(order);

  // Horner in w = g + (1-g) z: q <- b_k + w q, truncated at degree N. Each
  // step is a convex combination, so no intermediate quantity can grow.
  std::vector<Complex> q(n_top + 1, Complex{});
  std::size_t degree = 0;
  for (std::size_t k = k_top + 1; k-- > 0;) {
    for (std::size_t j = degree; j >= 1; --j) q[j] = g * q[j] + (1.0 - g) * q[j - 1];
    q[0] = g * q[0] + b[k];
    degree = std::min(degree + 1, n_top);
  }

  if (h.is_schur()) return TruncatedPowerSeries(std::move(q), 1.0, SeriesClass::Schur);
  double tail = 0.0;
  if (h.tail_bound() > 0.0 || k_top > n_top) {
    double m = h.tail_bound();
    for (const auto& c : b) m = std::max(m, std::abs(c));
    tail = m / (1.0 - g);
  }
  return TruncatedPowerSeries(std::move(q), tail);
}

TruncatedPowerSeries blaschke_coeffs(std::span<const Complex> zeros, Complex phase, int order) {
  if (order < 0) throw DomainError("truncation order must be nonnegative");
  if (std::abs(std::abs(phase) - 1.0) > 1e-12) throw DomainError("phase must be unimodular");
  for (const auto& a : zeros) {
    if (!(std::abs(a) < 1.0)) throw DomainError("Blaschke zeros must lie in the open unit disk");
  }
  std::vector<Complex> f(static_cast<std::size_t>(order) + 1, Complex{});
  f[0] = phase;
  // g = f (a - z)/(1 - conj(a) z)  <=>  g_n = conj(a) g_{n-1} + a f_n - f_{n-1}
  for (const auto& a : zeros) {
    const Complex ac = std::conj(a);
    Complex f_prev{}, g_prev{};
    for (auto& fn : f) {
      const Complex gn = ac * g_prev + a * fn - f_prev;
      f_prev = fn;
      fn = gn;
      g_prev = gn;
    }
  }
  return TruncatedPowerSeries(std::move(f), 1.0, SeriesClass::Schur);
}

Complex blaschke_eval(std::span<const Complex> zeros, Complex phase, Complex w) noexcept {
  Complex v = phase;
  for (const auto& a : zeros) v *= (a - w) / (1.0 - std::conj(a) * w);
  return v;
}

SchurSampleSpec::SchurSampleSpec(int degree_, std::uint64_t seed_, DomainGamma gamma_,
                                 int max_degree)
    : degree(degree_), seed(seed_), gamma(gamma_) {
  if (degree < 0 || degree > max_degree) {
    throw DomainError("Blaschke degree must lie in [0," + std::to_string(max_degree) + "]");
  }
}

BlaschkeData draw_blaschke(const SchurSampleSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  BlaschkeData out;
  out.zeros.reserve(static_cast<std::size_t>(spec.degree));
  for (int i = 0; i < spec.degree; ++i) {
    const double radius = kBlaschkeZeroRadius * std::sqrt(unit(rng));
    out.zeros.push_back(std::polar(radius, two_pi * unit(rng)));
  }
  out.phase = std::polar(1.0, two_pi * unit(rng));
  return out;
}

TruncatedPowerSeries sample_schur_omega(const SchurSampleSpec& spec, int order) {
  if (order < 0) throw DomainError("truncation order must be nonnegative");
  const auto data = draw_blaschke(spec);
  if (spec.gamma.gamma() == 0.0 || spec.degree == 0) {
    return affine_compose(blaschke_coeffs(data.zeros, data.phase, order), spec.gamma, order);
  }
  // The composition mixes every input coefficient into every output one, so
  // the Blaschke series is carried until its coefficients are negligible.
  constexpr double negligible = 1e-17;
  int input_order = std::max(order + 256, 512);
  for (;;) {
    auto h = blaschke_coeffs(data.zeros, data.phase, input_order);
    const auto c = h.coeffs();
    double trailing = 0.0;
    for (std::size_t k = c.size() * 3 / 4; k < c.size(); ++k)
      trailing = std::max(trailing, std::abs(c[k]));
    if (trailing < negligible) return affine_compose(h, spec.gamma, order);
    if (input_order >= static_cast<int>(kMaxTruncationOrder)) {
      throw NumericalError("Blaschke coefficients did not decay below 1e-17 within " +
                           std::to_string(kMaxTruncationOrder) + " terms");
    }
    input_order = std::min(2 * input_order, static_cast<int>(kMaxTruncationOrder));
  }
}

}  // namespace bohrkit
