#include "fkin/kgamma.hpp"

#include <cmath>
#include <string>

#include "fkin/error.hpp"

namespace fkin {

namespace {

bool is_pole(double x) { return x <= 0.0 && std::floor(x) == x; }

}  // namespace

PositiveReal::PositiveReal(double value) : value_(value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw NumericError(ErrorKind::domain,
                       "expected a finite positive value, got " + format_number(value));
  }
}

double gamma(double x) {
  if (std::isnan(x)) throw NumericError(ErrorKind::domain, "gamma of NaN");
  if (is_pole(x)) {
    throw NumericError(ErrorKind::pole, "gamma at non-positive integer " + format_number(x));
  }
  const double g = std::tgamma(x);
  if (!std::isfinite(g)) {
    throw NumericError(ErrorKind::overflow, "gamma(" + format_number(x) + ") overflows");
  }
  return g;
}

double k_gamma(double x, PositiveReal k) {
  const double kv = k.value();
  const double q = x / kv;
  if (std::isnan(q)) throw NumericError(ErrorKind::domain, "k_gamma of NaN");
  if (is_pole(q)) {
    throw NumericError(ErrorKind::pole, "k_gamma: x/k = " + format_number(q) +
                                            " is a non-positive integer");
  }
  double value = std::pow(kv, q - 1.0) * std::tgamma(q);
  if (!std::isfinite(value) || value == 0.0) {
    // Gamma(q) alone may overflow while k^(q-1) pulls the product back.
    const double log_mag = (q - 1.0) * std::log(kv) + std::lgamma(q);
    const double sign = std::tgamma(q) < 0.0 ? -1.0 : 1.0;
    value = sign * std::exp(log_mag);
  }
  if (!std::isfinite(value)) {
    throw NumericError(ErrorKind::overflow, "k_gamma(" + format_number(x) + ", " +
                                                format_number(kv) + ") overflows");
  }
  return value;
}

namespace detail {

wide gamma_wide(wide x) {
  if (isnanq(x)) throw NumericError(ErrorKind::domain, "gamma of NaN");
  if (is_nonpositive_integer(x)) {
    throw NumericError(ErrorKind::pole,
                       "gamma at non-positive integer " + format_number(double(x)));
  }
  const wide g = tgammaq(x);
  if (!is_finite(g)) {
    throw NumericError(ErrorKind::overflow, "gamma(" + format_number(double(x)) + ") overflows");
  }
  return g;
}

wide k_gamma_wide(wide x, wide k) {
  if (!(k > 0)) throw NumericError(ErrorKind::domain, "k_gamma requires k > 0");
  const wide q = x / k;
  if (is_nonpositive_integer(q)) {
    throw NumericError(ErrorKind::pole, "k_gamma: x/k = " + format_number(double(q)) +
                                            " is a non-positive integer");
  }
  const wide value = powq(k, q - 1) * gamma_wide(q);
  if (!is_finite(value)) {
    throw NumericError(ErrorKind::overflow, "k_gamma overflows");
  }
  return value;
}

}  // namespace detail

}  // namespace fkin
