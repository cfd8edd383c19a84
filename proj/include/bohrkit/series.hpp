#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace bohrkit {

using Complex = std::complex<double>;

/// A value together with a rigorous bound on what was left out.
struct Certified {
  double value = 0.0;
  double error = 0.0;
};

/// The disk Omega_gamma = {|z + gamma/(1-gamma)| < 1/(1-gamma)}, 0 <= gamma < 1.
class DomainGamma {
 public:
  explicit DomainGamma(double gamma);

  double gamma() const noexcept { return gamma_; }

  /// G(z) = (1 - gamma) z + gamma, mapping Omega_gamma onto the unit disk.
  Complex to_unit_disk(Complex z) const noexcept { return (1.0 - gamma_) * z + gamma_; }
  bool contains(Complex z) const noexcept;

 private:
  double gamma_;
};

enum class SeriesClass { General, Schur };

/// Coefficients c_0..c_N plus a bound B with |c_n| <= B for every n > N.
///
/// Schur-class series additionally carry B <= 1; that is checked on
/// construction and lets transforms propagate tighter tail bounds.
class TruncatedPowerSeries {
 public:
  TruncatedPowerSeries(std::vector<Complex> coeffs, double tail_bound,
                       SeriesClass kind = SeriesClass::General);

  static TruncatedPowerSeries constant(Complex c, SeriesClass kind = SeriesClass::General);

  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  const Complex& operator[](std::size_t n) const { return coeffs_[n]; }
  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  double tail_bound() const noexcept { return tail_bound_; }
  SeriesClass kind() const noexcept { return kind_; }
  bool is_schur() const noexcept { return kind_ == SeriesClass::Schur; }

  /// Horner evaluation of the truncated polynomial.
  Complex evaluate(Complex z) const noexcept;

  /// tail_bound * r^{N+1} / (1 - r); bounds the omitted part of the series at |z| = r.
  double tail_error(double r) const;

  /// Coefficientwise alpha * this + other. The result is General class.
  TruncatedPowerSeries axpy(Complex alpha, const TruncatedPowerSeries& other) const;

 private:
  std::vector<Complex> coeffs_;
  double tail_bound_;
  SeriesClass kind_;
};

inline constexpr std::size_t kMaxTruncationOrder = 20000;
inline constexpr double kDefaultTruncationTarget = 1e-12;

/// Smallest N with bound * r^{N+1} / (1 - r) <= target. Throws NumericalError
/// when N would exceed kMaxTruncationOrder (r too close to 1).
std::size_t truncation_order(double r, double bound = 1.0,
                             double target = kDefaultTruncationTarget);

/// Sum |c_n| r^n over the stored coefficients, with the certified tail.
Certified majorant_eval(const TruncatedPowerSeries& s, double r);

/// First N+1 Taylor coefficients of z -> h((1 - gamma) z + gamma).
///
/// Exact for the stored coefficients of h. For Schur inputs the result is
/// again Schur with tail bound 1; otherwise every coefficient of the
/// composition is bounded by max(|b_k|, tail) / (1 - gamma).
TruncatedPowerSeries affine_compose(const TruncatedPowerSeries& h, const DomainGamma& gamma,
                                    int order);

/// Taylor coefficients of phase * prod_j (a_j - z) / (1 - conj(a_j) z) up to order N.
TruncatedPowerSeries blaschke_coeffs(std::span<const Complex> zeros, Complex phase, int order);

inline constexpr int kDefaultMaxSchurDegree = 16;
inline constexpr double kBlaschkeZeroRadius = 0.95;

/// Recipe for a pseudo-random member of B(Omega_gamma).
struct SchurSampleSpec {
  SchurSampleSpec(int degree, std::uint64_t seed, DomainGamma gamma,
                  int max_degree = kDefaultMaxSchurDegree);

  int degree;
  std::uint64_t seed;
  DomainGamma gamma;
};

/// Blaschke factors drawn by a seeded generator.
struct BlaschkeData {
  std::vector<Complex> zeros;
  Complex phase;
};

BlaschkeData draw_blaschke(const SchurSampleSpec& spec);

/// B o G for the Blaschke product drawn from spec, truncated at order N.
TruncatedPowerSeries sample_schur_omega(const SchurSampleSpec& spec, int order);

/// Direct evaluation of phase * prod (a_j - w)/(1 - conj(a_j) w).
Complex blaschke_eval(std::span<const Complex> zeros, Complex phase, Complex w) noexcept;

}  // namespace bohrkit
