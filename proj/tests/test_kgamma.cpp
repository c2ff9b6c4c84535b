#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fkin/error.hpp"
#include "fkin/kgamma.hpp"
#include "support/reference_values.hpp"

using fkin::ErrorKind;
using fkin::NumericError;
using fkin::PositiveReal;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const NumericError& e) {
    return e.kind();
  }
  FAIL("expected a NumericError");
  return ErrorKind::invariant;
}

}  // namespace

TEST_CASE("gamma at known points") {
  CHECK(fkin::gamma(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-15));
  CHECK(fkin::gamma(5) == 24.0);
  CHECK(fkin::gamma(1.5) == doctest::Approx(0.5 * std::sqrt(std::numbers::pi)).epsilon(1e-15));
  CHECK(fkin::gamma(-0.5) == doctest::Approx(-2 * std::sqrt(std::numbers::pi)).epsilon(1e-15));
}

TEST_CASE("k_gamma at known points") {
  CHECK(fkin::k_gamma(1, PositiveReal(1)) == 1.0);
  CHECK(fkin::k_gamma(3, PositiveReal(3)) == 1.0);
  CHECK(fkin::k_gamma(0.7, PositiveReal(0.7)) == doctest::Approx(1.0).epsilon(1e-15));
  const double v = fkin::k_gamma(5, PositiveReal(2));
  CHECK(std::abs(v - fkin::testing::ref::k_gamma_5_2) / fkin::testing::ref::k_gamma_5_2 <= 1e-13);
}

TEST_CASE("poles, overflow and invalid k") {
  CHECK(kind_of([] { fkin::gamma(0); }) == ErrorKind::pole);
  CHECK(kind_of([] { fkin::gamma(-3); }) == ErrorKind::pole);
  CHECK(kind_of([] { fkin::gamma(200); }) == ErrorKind::overflow);
  CHECK(kind_of([] { fkin::k_gamma(-4, PositiveReal(2)); }) == ErrorKind::pole);
  CHECK(kind_of([] { fkin::k_gamma(0, PositiveReal(0.5)); }) == ErrorKind::pole);
  CHECK_THROWS_AS(PositiveReal{0.0}, NumericError);
  CHECK_THROWS_AS(PositiveReal{-1.0}, NumericError);
  CHECK_THROWS_AS(PositiveReal{NAN}, NumericError);
  CHECK_THROWS_AS(PositiveReal{INFINITY}, NumericError);
}

TEST_CASE("k_gamma off the poles for negative arguments") {
  // Gamma_2(-1) = 2^(-3/2) Gamma(-1/2)
  const double want = std::pow(2.0, -1.5) * -2 * std::sqrt(std::numbers::pi);
  CHECK(fkin::k_gamma(-1, PositiveReal(2)) == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("recurrence, k = 1 reduction and positivity on random samples") {
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> xs(0.1, 20.0);
  for (double k : {0.5, 1.0, 2.0, 3.0, 4.0}) {
    const PositiveReal kk(k);
    for (int i = 0; i < 400; ++i) {
      const double x = xs(rng);
      const double next = fkin::k_gamma(x + k, kk);
      const double here = fkin::k_gamma(x, kk);
      CHECK(std::abs(next - x * here) / next <= 1e-12);
      CHECK(here > 0.0);
    }
  }
  for (int i = 0; i < 400; ++i) {
    const double x = xs(rng);
    const double g = fkin::gamma(x);
    CHECK(std::abs(fkin::k_gamma(x, PositiveReal(1)) - g) / g <= 1e-14);
  }
}

TEST_CASE("log-convexity on a grid") {
  for (double k : {0.5, 1.0, 2.0, 3.0, 4.0}) {
    const PositiveReal kk(k);
    for (double x = 0.2; x < 19.8; x += 0.1) {
      const double h = 0.1;
      const double lm = std::log(fkin::k_gamma(x - h, kk));
      const double l0 = std::log(fkin::k_gamma(x, kk));
      const double lp = std::log(fkin::k_gamma(x + h, kk));
      CHECK(lm + lp - 2 * l0 >= -1e-12);
    }
  }
}

TEST_CASE("quad-precision gamma agrees with the double one") {
  for (double x : {0.3, 1.7, 4.25, 11.5, 33.0}) {
    const double wide = static_cast<double>(fkin::detail::gamma_wide(x));
    CHECK(wide == doctest::Approx(fkin::gamma(x)).epsilon(1e-15));
    const double kw = static_cast<double>(fkin::detail::k_gamma_wide(x, 2.5));
    CHECK(kw == doctest::Approx(fkin::k_gamma(x, PositiveReal(2.5))).epsilon(1e-14));
  }
}
