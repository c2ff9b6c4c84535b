#pragma once

// Euler gamma and the k-gamma function
//
//   Gamma_k(x) = k^(x/k - 1) * Gamma(x/k),   k > 0,
//
// which satisfies Gamma_k(x + k) = x * Gamma_k(x) and reduces to Gamma at
// k = 1. The double-precision gamma delegates to the C library tgamma
// (glibc measures below 1e-15 relative on (0.1, 50)); the quad-precision
// variants used inside the series delegate to libquadmath's tgammaq.

#include "fkin/detail/wide.hpp"

namespace fkin {

class PositiveReal {
 public:
  explicit PositiveReal(double value);

  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// Euler gamma. Throws NumericError{pole} at non-positive integers and
/// NumericError{overflow} when the result is not representable.
double gamma(double x);

/// k-gamma. Poles where x/k is a non-positive integer.
double k_gamma(double x, PositiveReal k);

namespace detail {

wide gamma_wide(wide x);
wide k_gamma_wide(wide x, wide k);

}  // namespace detail

}  // namespace fkin
