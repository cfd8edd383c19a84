#include "bohrkit/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bohrkit/errors.hpp"
#include "bohrkit/parallel.hpp"
#include "bohrkit/radii.hpp"

namespace bohrkit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_open_radius(double r) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("r must lie in (0,1)");
}

void require_positive_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("beta must be positive");
}

double roundoff_allowance(double a, double b, double c) {
  return 64.0 * kEps * (std::abs(a) + std::abs(b) + std::abs(c));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

int bernardi_extremal_order(double beta, double r) {
  // Tail term is |A_{N+1}| r^{N+1}/((N+1+beta)(1-r)) with |A_n| <= 1.
  return static_cast<int>(truncation_order(r, 1.0 / std::min(1.0, beta), 1e-14));
}

}  // namespace

ExtremalParams::ExtremalParams(double a, DomainGamma gamma) : a_(a), gamma_(gamma) {
  if (!(a > gamma.gamma() && a < 1.0)) throw PreconditionError("a must satisfy gamma < a < 1");
}

double ExtremalParams::leading() const noexcept {
  const double g = gamma();
  return (a_ - g) / (1.0 - a_ * g);
}

double ExtremalParams::ratio() const noexcept {
  const double g = gamma();
  return a_ * (1.0 - g) / (1.0 - a_ * g);
}

double ExtremalParams::coefficient(int n) const noexcept {
  const double g = gamma();
  return (1.0 - a_ * a_) / (a_ * (1.0 - a_ * g)) * std::pow(ratio(), n);
}

Complex ExtremalParams::evaluate(Complex z) const noexcept {
  const double g = gamma();
  return (a_ - g - (1.0 - g) * z) / (1.0 - a_ * g - a_ * (1.0 - g) * z);
}

TruncatedPowerSeries extremal_coeffs(const ExtremalParams& p, int order) {
  if (order < 0) throw DomainError("truncation order must be nonnegative");
  const double g = p.gamma();
  const double a = p.a();
  const double q = p.ratio();
  std::vector<Complex> c(static_cast<std::size_t>(order) + 1);
  c[0] = p.leading();
  double term = (1.0 - a * a) / (a * (1.0 - a * g));
  for (std::size_t n = 1; n < c.size(); ++n) {
    term *= q;
    c[n] = -term;
  }
  // |A_n| is decreasing, so |A_{N+1}| bounds every omitted coefficient.
  return TruncatedPowerSeries(std::move(c), term * q, SeriesClass::Schur);
}

int extremal_order(const ExtremalParams& p, double r, double target) {
  // Cesaro tail coefficients are at most max((P_N + B)/(N + 2), B) with
  // P_N <= A_0 + (1+a)(1-gamma)/(1-a gamma) and B <= 1.
  const double g = p.gamma();
  const double prefix = p.leading() + (1.0 + p.a()) * (1.0 - g) / (1.0 - p.a() * g);
  return static_cast<int>(truncation_order(r, prefix + 1.0, target));
}

double cesaro_first_order_factor(double gamma, double r) {
  require_open_radius(r);
  return (2.0 * r + (3.0 + gamma) * (1.0 - r) * std::log1p(-r)) / (r * (1.0 - r));
}

double bernardi_first_order_factor(double gamma, double beta, double r) {
  require_open_radius(r);
  require_positive_beta(beta);
  return 1.0 / beta - 2.0 / (1.0 + gamma) * lerch_tail_sum(r, beta, 1).value;
}

Decomposition cesaro_extremal_decomposition(const ExtremalParams& p, double r) {
  require_open_radius(r);
  const double a = p.a();
  const double g = p.gamma();
  Decomposition d;
  d.bound = log_bound(r);
  d.first_order = (1.0 - a) / (1.0 - a * g) * cesaro_first_order_factor(g, r);
  const auto maj = cesaro_majorant(extremal_coeffs(p, extremal_order(p, r)), r);
  d.majorant = maj.value;
  d.remainder = maj.value - d.bound - d.first_order;
  d.error = maj.error + roundoff_allowance(maj.value, d.bound, d.first_order);
  return d;
}

Decomposition bernardi_extremal_decomposition(const ExtremalParams& p, double beta, double r) {
  require_open_radius(r);
  require_positive_beta(beta);
  const double a = p.a();
  Decomposition d;
  d.bound = 1.0 / beta;
  d.first_order = -(1.0 - a) * bernardi_first_order_factor(p.gamma(), beta, r);
  const auto series = extremal_coeffs(p, bernardi_extremal_order(beta, r));
  const auto maj = bernardi_majorant(series, BernardiParams(beta), r);
  d.majorant = maj.value;
  d.remainder = maj.value - d.bound - d.first_order;
  d.error = maj.error + roundoff_allowance(maj.value, d.bound, d.first_order);
  return d;
}

SchurSampleSpec suite_sample_spec(const DomainGamma& gamma, int index, int degree_max,
                                  std::uint64_t seed) {
  if (degree_max < 0) throw DomainError("degree_max must be nonnegative");
  const int degree = index % (degree_max + 1);
  const std::uint64_t mixed = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(index)));
  return SchurSampleSpec(degree, mixed, gamma);
}

Lemma1Report lemma1_check(const DomainGamma& gamma, int num_samples, int degree_max, int order,
                          std::uint64_t seed) {
  if (num_samples < 1) throw PreconditionError("lemma1_check needs at least one sample");
  if (order < 1) throw PreconditionError("lemma1_check needs coefficients up to n >= 1");
  const double g = gamma.gamma();

  struct SampleRatio {
    bool skipped = false;
    double ratio = 0.0;
  };
  const auto ratios = parallel_map(static_cast<std::size_t>(num_samples), [&](std::size_t i) {
    const auto spec = suite_sample_spec(gamma, static_cast<int>(i), degree_max, seed);
    const auto s = sample_schur_omega(spec, order);
    const double a0 = std::abs(s[0]);
    const double denom = 1.0 - a0 * a0;
    if (denom < 1e-8) return SampleRatio{true, 0.0};
    double worst = 0.0;
    for (std::size_t n = 1; n <= s.order(); ++n) worst = std::max(worst, std::abs(s[n]));
    return SampleRatio{false, worst * (1.0 + g) / denom};
  });

  Lemma1Report report;
  report.gamma = g;
  report.samples = num_samples;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    if (ratios[i].skipped) {
      ++report.skipped;
      continue;
    }
    if (report.worst_index < 0 || ratios[i].ratio > report.max_ratio) {
      report.max_ratio = ratios[i].ratio;
      report.worst_index = static_cast<int>(i);
    }
  }
  if (report.worst_index >= 0)
    report.worst_spec = suite_sample_spec(gamma, report.worst_index, degree_max, seed);
  return report;
}

std::string to_string(OperatorKind kind) {
  return kind == OperatorKind::Cesaro ? "cesaro" : "bernardi";
}

OperatorKind operator_kind_from_string(const std::string& name) {
  if (name == "cesaro") return OperatorKind::Cesaro;
  if (name == "bernardi") return OperatorKind::Bernardi;
  throw PreconditionError("unknown operator '" + name + "' (expected cesaro or bernardi)");
}

std::vector<double> default_sharpness_ladder() { return {0.99, 0.999, 0.9999}; }

std::vector<double> default_remainder_ladder() { return {0.9, 0.99, 0.999, 0.9999}; }

namespace {

template <typename MarginFn>
void fill_margins(SharpnessReport& report, std::span<const double> a_list, MarginFn&& margin_of) {
  if (a_list.empty()) throw PreconditionError("sharpness scan needs at least one value of a");
  for (const double a : a_list) {
    const auto [margin, error] = margin_of(ExtremalParams(a, DomainGamma(report.gamma)));
    report.a_values.push_back(a);
    report.margins.push_back(margin);
    report.errors.push_back(error);
    if (!report.witness_found && margin > 10.0 * error) {
      report.witness_found = true;
      report.witness_a = a;
    }
  }
}

std::string radius_guard_message(const char* name, double r, double radius) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "r = " << r << " must exceed the " << name << " radius " << radius;
  return msg.str();
}

}  // namespace

SharpnessReport sharpness_scan_cesaro(const DomainGamma& gamma, double r,
                                      std::span<const double> a_list) {
  require_open_radius(r);
  SharpnessReport report;
  report.op = OperatorKind::Cesaro;
  report.gamma = gamma.gamma();
  report.r = r;
  report.radius = cesaro_radius(gamma).value;
  if (!(r > report.radius)) throw PreconditionError(radius_guard_message("Cesaro", r, report.radius));
  const double bound = log_bound(r);
  fill_margins(report, a_list, [&](const ExtremalParams& p) {
    const auto maj = cesaro_majorant(extremal_coeffs(p, extremal_order(p, r)), r);
    const double margin = maj.value - bound;
    return std::pair{margin, maj.error + roundoff_allowance(maj.value, bound, 0.0)};
  });
  return report;
}

SharpnessReport sharpness_scan_bernardi(const DomainGamma& gamma, double beta, double r,
                                        std::span<const double> a_list) {
  require_open_radius(r);
  require_positive_beta(beta);
  SharpnessReport report;
  report.op = OperatorKind::Bernardi;
  report.gamma = gamma.gamma();
  report.beta = beta;
  report.exploratory = beta < 1.0;
  report.r = r;
  report.radius = bernardi_radius(gamma, beta).value;
  if (!(r > report.radius))
    throw PreconditionError(radius_guard_message("Bernardi", r, report.radius));
  const double bound = 1.0 / beta;
  const BernardiParams params(beta);
  fill_margins(report, a_list, [&](const ExtremalParams& p) {
    const auto series = extremal_coeffs(p, bernardi_extremal_order(beta, r));
    const auto maj = bernardi_majorant(series, params, r);
    const double margin = maj.value - bound;
    return std::pair{margin, maj.error + roundoff_allowance(maj.value, bound, 0.0)};
  });
  return report;
}

RemainderOrderResult remainder_order_check(OperatorKind kind, const DomainGamma& gamma,
                                           std::optional<double> beta, double r,
                                           std::span<const double> a_list) {
  require_open_radius(r);
  if (kind == OperatorKind::Bernardi) {
    if (!beta) throw PreconditionError("Bernardi remainder check needs beta");
    require_positive_beta(*beta);
  }
  if (a_list.size() < 2) throw InconclusiveError("a slope needs at least two ladder points");

  RemainderOrderResult out;
  for (std::size_t i = 0; i < a_list.size(); ++i) {
    const ExtremalParams p(a_list[i], gamma);
    const auto d = kind == OperatorKind::Cesaro ? cesaro_extremal_decomposition(p, r)
                                                : bernardi_extremal_decomposition(p, *beta, r);
    out.one_minus_a.push_back(1.0 - a_list[i]);
    out.remainders.push_back(d.remainder);
    out.noise.push_back(d.error);
    if (std::abs(d.remainder) > 100.0 * d.error && d.remainder != 0.0)
      out.used.push_back(static_cast<int>(i));
  }
  if (out.used.size() < 2)
    throw InconclusiveError("fewer than two remainders exceed 100x their numerical error");

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const int i : out.used) {
    const double x = std::log(out.one_minus_a[static_cast<std::size_t>(i)]);
    const double y = std::log(std::abs(out.remainders[static_cast<std::size_t>(i)]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(out.used.size());
  const double denom = n * sxx - sx * sx;
  if (!(std::abs(denom) > 0.0)) throw InconclusiveError("ladder points share a single value of a");
  out.slope = (n * sxy - sx * sy) / denom;
  return out;
}

IdentityReport identity_suite() {
  IdentityReport report;
  auto record = [&report](std::string name, double r, double series, double closed) {
    const double dev = std::abs(series - closed);
    report.max_deviation = std::max(report.max_deviation, dev);
    report.rows.push_back({std::move(name), r, series, closed, dev});
  };
  // Geometric ratio of the extremal family at a = 0.9, gamma = 0.3.
  const double q = ExtremalParams(0.9, DomainGamma(0.3)).ratio();

  for (int k = 1; k <= 9; ++k) {
    const double r = 0.1 * k;
    const auto n_top = truncation_order(r, 1.0 / (1.0 - q), 1e-17);
    double weighted = 0.0, plain = 0.0, resummed = 0.0;
    double power = 1.0, partial = 0.0, qpow = 1.0;
    for (std::size_t n = 0; n <= n_top; ++n) {
      const double inv = 1.0 / static_cast<double>(n + 1);
      plain += power * inv;
      weighted += static_cast<double>(n) * inv * power;
      if (n >= 1) {
        partial += qpow;  // sum_{k=1}^{n} q^{k-1}
        qpow *= q;
        resummed += partial * inv * power;
      }
      power *= r;
    }
    const double L = log_bound(r);
    record("sum n r^n/(n+1) = 1/(1-r) - L(r)", r, weighted, 1.0 / (1.0 - r) - L);
    record("sum r^n/(n+1) = L(r)", r, plain, L);
    record("sum (1/(n+1)) (sum_{k<=n} q^{k-1}) r^n = (L(r) - L(qr))/(1-q)", r, resummed,
           (L - log_bound(q * r)) / (1.0 - q));
  }
  return report;
}

BelowRadiusReport below_radius_check(OperatorKind kind, const DomainGamma& gamma,
                                     std::optional<double> beta, int num_samples,
                                     std::uint64_t seed, double fraction, int degree_max) {
  if (num_samples < 1) throw PreconditionError("below_radius_check needs at least one sample");
  if (!(fraction > 0.0 && fraction < 1.0)) throw DomainError("radius fraction must lie in (0,1)");
  BelowRadiusReport report;
  report.op = kind;
  report.gamma = gamma.gamma();
  report.samples = num_samples;

  double radius = 0.0, bound = 0.0;
  std::size_t order = 0;
  if (kind == OperatorKind::Cesaro) {
    radius = cesaro_radius(gamma).value;
    report.r = fraction * radius;
    bound = log_bound(report.r);
    order = truncation_order(report.r, 1.0, 1e-13);
  } else {
    if (!beta) throw PreconditionError("Bernardi check needs beta");
    require_positive_beta(*beta);
    report.beta = beta;
    radius = bernardi_radius(gamma, *beta).value;
    report.r = fraction * radius;
    bound = 1.0 / *beta;
    order = truncation_order(report.r, 1.0 / std::min(1.0, *beta), 1e-13);
  }
  const double r = report.r;

  struct Outcome {
    double excess = 0.0;
    bool violation = false;
  };
  const auto outcomes = parallel_map(static_cast<std::size_t>(num_samples), [&](std::size_t i) {
    const auto spec = suite_sample_spec(gamma, static_cast<int>(i), degree_max, seed);
    const auto s = sample_schur_omega(spec, static_cast<int>(order));
    const auto maj = kind == OperatorKind::Cesaro ? cesaro_majorant(s, r)
                                                  : bernardi_majorant(s, BernardiParams(*beta), r);
    const double error = maj.error + roundoff_allowance(maj.value, bound, 0.0);
    const double over = maj.value - bound;
    return Outcome{over / error, over > 10.0 * error};
  });
  report.max_excess = -std::numeric_limits<double>::infinity();
  for (const auto& o : outcomes) {
    report.max_excess = std::max(report.max_excess, o.excess);
    if (o.violation) ++report.violations;
  }
  return report;
}

}  // namespace bohrkit
