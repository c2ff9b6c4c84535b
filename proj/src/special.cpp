#include "fkin/special.hpp"

#include <cmath>
#include <string>

#include "fkin/error.hpp"
#include "fkin/kgamma.hpp"

namespace fkin {

using detail::wide;

namespace {

std::string str(double v) { return format_number(v); }

wide reciprocal_gamma(double alpha, wide beta, int n) {
  const wide arg = wide(alpha) * n + beta;
  if (detail::is_nonpositive_integer(arg)) return nanq("");
  // An overflowing gamma gives a reciprocal of exactly zero, which is the
  // right coefficient.
  return 1 / tgammaq(arg);
}

// Mittag-Leffler summation loop shared by the scalar function and the
// tabulated series so both produce identical bits.
template <typename Coefficient>
wide mittag_leffler_sum(wide z, int max_terms, double rel_tol, Coefficient&& coefficient) {
  if (isnanq(z)) throw NumericError(ErrorKind::domain, "Mittag-Leffler argument is NaN");
  if (detail::abs(z) > kMittagLefflerArgCap) {
    throw NumericError(ErrorKind::range, "Mittag-Leffler argument |z| = " + str(double(z)) +
                                             " exceeds cap " + str(kMittagLefflerArgCap));
  }
  detail::CompensatedSum<wide> sum;
  wide power = 1;
  wide previous = 0;
  for (int n = 0; n < max_terms; ++n) {
    const wide c = coefficient(n);
    if (isnanq(c)) {
      throw NumericError(ErrorKind::pole, "alpha*n + beta hits a gamma pole at n = " +
                                              std::to_string(n));
    }
    const wide term = c * power;
    const bool last = n > 0 && detail::series_exhausted(term, previous, sum.value(), rel_tol);
    sum.add(term);
    if (last) break;
    previous = term;
    power *= z;
  }
  return sum.value();
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw NumericError(ErrorKind::domain, "Mittag-Leffler alpha must be positive, got " + str(alpha));
  }
}

}  // namespace

void SeriesControl::validate() const {
  if (max_terms < 1) {
    throw NumericError(ErrorKind::invariant, "max_terms must be >= 1, got " + std::to_string(max_terms));
  }
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw NumericError(ErrorKind::invariant, "rel_tol must lie in (0, 1), got " + str(rel_tol));
  }
}

void KStruveParams::validate() const {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw NumericError(ErrorKind::invariant, "k must be positive, got " + str(k));
  }
  if (!std::isfinite(nu) || !(nu > -1.5 * k)) {
    throw NumericError(ErrorKind::invariant,
                       "nu must exceed -3k/2 = " + str(-1.5 * k) + ", got " + str(nu));
  }
  if (!std::isfinite(c)) throw NumericError(ErrorKind::invariant, "c must be finite");
}

namespace detail {

bool series_exhausted(wide term, wide previous, wide sum, double rel_tol) {
  const wide mag = abs(term);
  return mag <= wide(rel_tol) * abs(sum) && mag <= abs(previous);
}

std::vector<PowerTerm> struve_terms(double p, double c, int count) {
  std::vector<PowerTerm> terms;
  terms.reserve(count);
  wide g_half = gamma_wide(wide(1.5));
  wide g_order = gamma_wide(wide(p) + wide(1.5));
  wide sign = 1;
  for (int r = 0; r < count; ++r) {
    terms.push_back({sign / (g_order * g_half), wide(2 * r) + wide(p) + 1});
    g_half *= wide(r) + wide(1.5);
    g_order *= wide(r) + wide(p) + wide(1.5);
    sign *= -wide(c);
  }
  return terms;
}

std::vector<PowerTerm> k_struve_terms(const KStruveParams& params, int count) {
  const wide k = params.k;
  const wide nu = params.nu;
  std::vector<PowerTerm> terms;
  terms.reserve(count);
  wide g_half = gamma_wide(wide(1.5));
  // Gamma_k(rk + nu + 3k/2) advances by Gamma_k(x + k) = x Gamma_k(x).
  wide g_k = k_gamma_wide(nu + wide(1.5) * k, k);
  wide sign = 1;
  for (int r = 0; r < count; ++r) {
    terms.push_back({sign / (g_k * g_half), wide(2 * r) + nu / k + 1});
    g_half *= wide(r) + wide(1.5);
    g_k *= wide(r) * k + nu + wide(1.5) * k;
    sign *= -wide(params.c);
  }
  return terms;
}

wide sum_power_series(std::span<const PowerTerm> terms, wide base, const SeriesControl& ctl) {
  CompensatedSum<wide> sum;
  wide previous = 0;
  const auto limit = std::min<std::size_t>(terms.size(), static_cast<std::size_t>(ctl.max_terms));
  for (std::size_t i = 0; i < limit; ++i) {
    const wide term = terms[i].coefficient * powq(base, terms[i].exponent);
    if (!is_finite(term)) {
      throw NumericError(ErrorKind::domain, "series term is singular at base " +
                                                str(double(base)));
    }
    const bool last = i > 0 && series_exhausted(term, previous, sum.value(), ctl.rel_tol);
    sum.add(term);
    if (last) break;
    previous = term;
  }
  return sum.value();
}

}  // namespace detail

double struve_h(double p, double x, const SeriesControl& ctl) {
  ctl.validate();
  if (!(p > -1.5) || !std::isfinite(p)) {
    throw NumericError(ErrorKind::domain, "Struve order p must exceed -3/2, got " + str(p));
  }
  if (std::isnan(x)) throw NumericError(ErrorKind::domain, "Struve argument is NaN");
  if (std::abs(x) > kStruveArgCap) {
    throw NumericError(ErrorKind::range, "Struve argument |x| = " + str(x) + " exceeds cap " +
                                             str(kStruveArgCap));
  }
  double sign = 1.0;
  if (x < 0.0) {
    if (std::floor(p) != p) {
      throw NumericError(ErrorKind::domain, "Struve argument x = " + str(x) +
                                                " < 0 requires integer order, got p = " + str(p));
    }
    // H_p(-x) = (-1)^(p+1) H_p(x) for integer p.
    sign = std::fmod(std::abs(p), 2.0) == 0.0 ? -1.0 : 1.0;
    x = -x;
  }
  const auto terms = detail::struve_terms(p, 1.0, ctl.max_terms);
  return sign * double(detail::sum_power_series(terms, wide(x) / 2, ctl));
}

double k_struve(const KStruveParams& params, double x, const SeriesControl& ctl) {
  return KStruveSeries(params, ctl)(x);
}

double mittag_leffler(double alpha, double z, const SeriesControl& ctl) {
  return mittag_leffler2(alpha, 1.0, z, ctl);
}

double mittag_leffler2(double alpha, double beta, double z, const SeriesControl& ctl) {
  ctl.validate();
  check_alpha(alpha);
  if (!std::isfinite(beta)) throw NumericError(ErrorKind::domain, "beta must be finite");
  const wide b = beta;
  return double(mittag_leffler_sum(z, ctl.max_terms, ctl.rel_tol,
                                   [&](int n) { return reciprocal_gamma(alpha, b, n); }));
}

MittagLefflerSeries::MittagLefflerSeries(double alpha, wide beta, const SeriesControl& ctl)
    : alpha_(alpha), beta_(beta), rel_tol_(ctl.rel_tol) {
  ctl.validate();
  check_alpha(alpha);
  if (!detail::is_finite(beta)) throw NumericError(ErrorKind::domain, "beta must be finite");
  reciprocal_gamma_.reserve(ctl.max_terms);
  for (int n = 0; n < ctl.max_terms; ++n) reciprocal_gamma_.push_back(reciprocal_gamma(alpha, beta, n));
}

double MittagLefflerSeries::operator()(double z) const { return double(evaluate(z)); }

wide MittagLefflerSeries::evaluate(wide z) const {
  return mittag_leffler_sum(z, static_cast<int>(reciprocal_gamma_.size()), rel_tol_,
                            [&](int n) { return reciprocal_gamma_[n]; });
}

KStruveSeries::KStruveSeries(const KStruveParams& params, const SeriesControl& ctl) : ctl_(ctl) {
  ctl.validate();
  params.validate();
  terms_ = detail::k_struve_terms(params, ctl.max_terms);
}

double KStruveSeries::operator()(double x) const {
  if (std::isnan(x) || x < 0.0) {
    throw NumericError(ErrorKind::domain, "k-Struve argument must be >= 0, got " + str(x));
  }
  if (x > kStruveArgCap) {
    throw NumericError(ErrorKind::range, "k-Struve argument x = " + str(x) + " exceeds cap " +
                                             str(kStruveArgCap));
  }
  return double(detail::sum_power_series(terms_, wide(x) / 2, ctl_));
}

}  // namespace fkin
