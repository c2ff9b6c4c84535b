#pragma once

// Quad-precision scratch arithmetic for series evaluation. The alternating
// series here cancel several decades before converging, so terms are formed
// and summed in binary128 and rounded to double once at the end.

#include <quadmath.h>

#include <cmath>

namespace fkin::detail {

using wide = __float128;

inline wide abs(wide x) { return fabsq(x); }
inline bool is_finite(wide x) { return finiteq(x) != 0; }
inline bool is_nonpositive_integer(wide x) { return x <= 0 && floorq(x) == x; }

// Neumaier's variant of Kahan summation; tolerates terms larger than the
// running sum, which is the normal situation before an alternating series
// reaches its peak term.
template <typename T>
class CompensatedSum {
 public:
  void add(T term) {
    const T t = sum_ + term;
    if (abs_(sum_) >= abs_(term)) {
      carry_ += (sum_ - t) + term;
    } else {
      carry_ += (term - t) + sum_;
    }
    sum_ = t;
  }

  T value() const { return sum_ + carry_; }

 private:
  static T abs_(T x) { return x < 0 ? -x : x; }

  T sum_{0};
  T carry_{0};
};

}  // namespace fkin::detail
