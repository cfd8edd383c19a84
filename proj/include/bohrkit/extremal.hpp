#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bohrkit/operators.hpp"
#include "bohrkit/series.hpp"

namespace bohrkit {

/// The sharpness family f_gamma = psi_a o G, psi_a(w) = (a - w)/(1 - a w).
/// Requires gamma < a < 1.
class ExtremalParams {
 public:
  ExtremalParams(double a, DomainGamma gamma);

  double a() const noexcept { return a_; }
  const DomainGamma& domain() const noexcept { return gamma_; }
  double gamma() const noexcept { return gamma_.gamma(); }

  /// f_gamma(0) = (a - gamma)/(1 - a gamma).
  double leading() const noexcept;
  /// a (1 - gamma)/(1 - a gamma), the geometric ratio of the tail coefficients.
  double ratio() const noexcept;
  /// |A_n| for n >= 1.
  double coefficient(int n) const noexcept;
  /// (a - gamma - (1-gamma) z)/(1 - a gamma - a (1-gamma) z).
  Complex evaluate(Complex z) const noexcept;

 private:
  double a_;
  DomainGamma gamma_;
};

/// (A_0, -A_1, ..., -A_N), tail bound |A_{N+1}|.
TruncatedPowerSeries extremal_coeffs(const ExtremalParams& p, int order);

/// Truncation order giving extremal Cesaro/Bernardi majorants a tail below `target` at r.
int extremal_order(const ExtremalParams& p, double r, double target = 1e-14);

/// majorant = bound + first_order + remainder; `remainder` is the residual.
struct Decomposition {
  double bound = 0.0;
  double first_order = 0.0;
  double remainder = 0.0;
  double majorant = 0.0;
  /// Certified truncation error of `majorant` plus a roundoff allowance.
  double error = 0.0;
};

/// (2r + (3+gamma)(1-r) ln(1-r)) / (r(1-r)); changes sign at R_gamma.
double cesaro_first_order_factor(double gamma, double r);

/// 1/beta - (2/(1+gamma)) sum_{n>=1} r^n/(n+beta); changes sign at R_{gamma,beta}.
double bernardi_first_order_factor(double gamma, double beta, double r);

Decomposition cesaro_extremal_decomposition(const ExtremalParams& p, double r);

/// beta in (0, 1) is accepted but the sign argument is only known to hold for beta >= 1.
Decomposition bernardi_extremal_decomposition(const ExtremalParams& p, double beta, double r);

// Verification suites ---------------------------------------------------------

struct Lemma1Report {
  double gamma = 0.0;
  int samples = 0;
  int skipped = 0;
  /// max over samples and 1 <= n <= N of |a_n| (1+gamma) / (1 - |a_0|^2).
  double max_ratio = 0.0;
  int worst_index = -1;
  std::optional<SchurSampleSpec> worst_spec;
};

/// Per-sample spec used by the seeded suites: degree cycles through
/// 0..degree_max and the seed is mixed with the sample index.
SchurSampleSpec suite_sample_spec(const DomainGamma& gamma, int index, int degree_max,
                                  std::uint64_t seed);

Lemma1Report lemma1_check(const DomainGamma& gamma, int num_samples, int degree_max, int order,
                          std::uint64_t seed);

enum class OperatorKind { Cesaro, Bernardi };

std::string to_string(OperatorKind kind);
OperatorKind operator_kind_from_string(const std::string& name);

struct SharpnessReport {
  OperatorKind op = OperatorKind::Cesaro;
  double gamma = 0.0;
  std::optional<double> beta;
  double r = 0.0;
  double radius = 0.0;
  std::vector<double> a_values;
  std::vector<double> margins;
  std::vector<double> errors;
  bool witness_found = false;
  std::optional<double> witness_a;
  /// Set for Bernardi scans with beta < 1.
  bool exploratory = false;
};

/// The default ladder {1 - 10^-k}, k = 2..4.
std::vector<double> default_sharpness_ladder();

SharpnessReport sharpness_scan_cesaro(const DomainGamma& gamma, double r,
                                      std::span<const double> a_list);
SharpnessReport sharpness_scan_bernardi(const DomainGamma& gamma, double beta, double r,
                                        std::span<const double> a_list);

struct RemainderOrderResult {
  double slope = 0.0;
  std::vector<double> one_minus_a;
  std::vector<double> remainders;
  std::vector<double> noise;
  /// Indices of the ladder points above 100x noise that entered the fit.
  std::vector<int> used;
};

/// The default ladder {1 - 10^-k}, k = 1..4.
std::vector<double> default_remainder_ladder();

/// Least-squares slope of log|remainder| against log(1 - a).
RemainderOrderResult remainder_order_check(OperatorKind kind, const DomainGamma& gamma,
                                           std::optional<double> beta, double r,
                                           std::span<const double> a_list);

struct IdentityRow {
  std::string name;
  double r = 0.0;
  double series = 0.0;
  double closed_form = 0.0;
  double deviation = 0.0;
};

struct IdentityReport {
  std::vector<IdentityRow> rows;
  double max_deviation = 0.0;
};

/// Series identities used by the Cesaro estimates, on r = 0.1, ..., 0.9.
IdentityReport identity_suite();

struct BelowRadiusReport {
  OperatorKind op = OperatorKind::Cesaro;
  double gamma = 0.0;
  std::optional<double> beta;
  double r = 0.0;
  int samples = 0;
  int violations = 0;
  /// max over samples of (majorant - bound) / error; <= 10 means no violation.
  double max_excess = 0.0;
};

/// Checks the operator majorant of seeded Schur samples against its bound at
/// r = fraction * radius.
BelowRadiusReport below_radius_check(OperatorKind kind, const DomainGamma& gamma,
                                     std::optional<double> beta, int num_samples,
                                     std::uint64_t seed, double fraction = 0.99,
                                     int degree_max = 8);

}  // namespace bohrkit
