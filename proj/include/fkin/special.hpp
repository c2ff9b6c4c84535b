#pragma once

// Series evaluators for the Struve, k-Struve and Mittag-Leffler functions.
//
// All series are formed in quad precision with compensated accumulation and
// truncated after `max_terms` terms, or earlier at the first decreasing term
// that falls below `rel_tol` times the running sum (that term is included).
//
// Arguments are capped: |z| <= 50 for Mittag-Leffler and x <= 20 for the
// Struve series. Beyond those limits plain summation is not validated.

#include <span>
#include <vector>

#include "fkin/detail/wide.hpp"

namespace fkin {

inline constexpr double kMittagLefflerArgCap = 50.0;
inline constexpr double kStruveArgCap = 20.0;

struct SeriesControl {
  int max_terms = 50;
  double rel_tol = 1e-14;

  void validate() const;
};

/// Parameters of the k-Struve function S^k_{nu,c}. Requires k > 0 and
/// nu > -3k/2.
struct KStruveParams {
  double nu = 1.0;
  double c = 1.0;
  double k = 1.0;

  void validate() const;
};

/// Struve function H_p(x). Requires p > -3/2. Negative x is accepted only for
/// integer p, through H_p(-x) = (-1)^(p+1) H_p(x).
double struve_h(double p, double x, const SeriesControl& ctl = {});

/// k-Struve function S^k_{nu,c}(x) for x >= 0.
double k_struve(const KStruveParams& params, double x, const SeriesControl& ctl = {});

/// One-parameter Mittag-Leffler function E_alpha(z); shares the code path of
/// mittag_leffler2(alpha, 1, z).
double mittag_leffler(double alpha, double z, const SeriesControl& ctl = {});

/// Two-parameter Mittag-Leffler function E_{alpha,beta}(z).
double mittag_leffler2(double alpha, double beta, double z, const SeriesControl& ctl = {});

namespace detail {

/// One term c * base^e of a generalized power series.
struct PowerTerm {
  wide coefficient;
  wide exponent;
};

/// Terms of the k-Struve series in powers of (x/2):
///   (-c)^r / (Gamma_k(rk + nu + 3k/2) Gamma(r + 3/2)),  exponent 2r + nu/k + 1.
std::vector<PowerTerm> k_struve_terms(const KStruveParams& params, int count);

/// Terms of the classical Struve-type series in powers of (x/2) with sign
/// parameter c:  (-c)^r / (Gamma(r + p + 3/2) Gamma(r + 3/2)),  exponent 2r + p + 1.
std::vector<PowerTerm> struve_terms(double p, double c, int count);

/// Sum of coefficient * base^exponent over `terms`, truncated per `ctl`.
wide sum_power_series(std::span<const PowerTerm> terms, wide base, const SeriesControl& ctl);

/// Shared truncation rule: true once `term` is no larger than its predecessor
/// and at most rel_tol * |sum|. That term is still added, then the series stops.
bool series_exhausted(wide term, wide previous, wide sum, double rel_tol);

}  // namespace detail

/// E_{alpha,beta} with its coefficients 1/Gamma(alpha n + beta) tabulated once,
/// for repeated evaluation at many arguments.
class MittagLefflerSeries {
 public:
  MittagLefflerSeries(double alpha, detail::wide beta, const SeriesControl& ctl);

  double operator()(double z) const;
  detail::wide evaluate(detail::wide z) const;

  double alpha() const noexcept { return alpha_; }

 private:
  double alpha_;
  detail::wide beta_;
  double rel_tol_;
  // NaN marks an index where alpha n + beta sits on a gamma pole.
  std::vector<detail::wide> reciprocal_gamma_;
};

/// k-Struve function with its coefficients tabulated once.
class KStruveSeries {
 public:
  KStruveSeries(const KStruveParams& params, const SeriesControl& ctl);

  double operator()(double x) const;

 private:
  SeriesControl ctl_;
  std::vector<detail::PowerTerm> terms_;
};

}  // namespace fkin
