#pragma once

// Closed-form solutions of the fractional kinetic equation
//
//   N(t) - N0 F(t) = -r^v  I^v N(t),
//
// where I^v is the Riemann-Liouville integral of order v and the forcing F is
// a k-Struve function. For a forcing given as a generalized power series
// F(t) = sum_j f_j t^(e_j), Laplace inversion gives
//
//   N(t) = sum_j f_j Gamma(e_j + 1) t^(e_j) E_{v, e_j + 1}(-r^v t^v).
//
// Three variants are covered:
//   thm1  F(t) = S^k_{l,c}(t),          rate r = d
//   thm2  F(t) = S^k_{l,c}(d^v t^v),    rate r = d
//   thm3  F(t) = S^k_{l,c}(d^v t^v),    rate r = a, a != d
//
// With a forcing of argument d^v t^v the k-Struve powers are
// (d^v/2)^m t^(v m), m = 2r + l/k + 1. ExponentReading::printed uses
// m = 2r + l + 1 for thm2/thm3 instead. The two agree only at k = 1; the
// printed form is kept so it can be checked against the integral equation.
// The thm3 denominator is Gamma_k(rk + l + 3k/2) in both readings.

#include <optional>
#include <span>
#include <vector>

#include "fkin/detail/wide.hpp"
#include "fkin/special.hpp"

namespace fkin {

enum class Variant { thm1, thm2, thm3 };
enum class ExponentReading { consistent, printed };

/// Which right-hand side drives the integral equation. `constant` replaces the
/// k-Struve forcing by F = 1 and exists for exponential-decay checks.
enum class Forcing { struve_t, struve_dt, constant };

struct KineticParams {
  double n0 = 1.0;
  double upsilon = 1.0;
  double d = 1.0;
  std::optional<double> a;
  Variant variant = Variant::thm1;
  KStruveParams struve{};  // nu plays the role of l
  ExponentReading reading = ExponentReading::consistent;
};

/// Validated kinetic problem. d = 0 is accepted as the degenerate
/// no-reaction limit; thm3 needs a > 0 with a != d.
class KineticProblem {
 public:
  explicit KineticProblem(const KineticParams& params);

  const KineticParams& params() const noexcept { return params_; }
  Variant variant() const noexcept { return params_.variant; }

  /// Rate constant multiplying the fractional integral: d, or a for thm3.
  double rate() const noexcept;
  /// Forcing matching the variant's integral equation.
  Forcing forcing() const noexcept;

 private:
  KineticParams params_;
};

struct SolutionTable {
  std::vector<double> t;
  std::vector<double> n;

  void validate() const;
};

/// One term f * t^e of a forcing expressed as a generalized power series.
/// The coefficient already carries N0.
using ForcingTerm = detail::PowerTerm;

/// Power-series expansion of N0 F(t) for the given forcing. The problem's
/// exponent reading selects the struve_dt exponents.
std::vector<ForcingTerm> forcing_terms(const KineticProblem& problem, Forcing forcing,
                                       const SeriesControl& ctl);

/// Evaluator for sum_j f_j Gamma(e_j + 1) t^(e_j) E_{v, e_j+1}(-rate^v t^v)
/// with all Mittag-Leffler coefficient tables built up front.
class ClosedFormSolution {
 public:
  ClosedFormSolution(std::span<const ForcingTerm> forcing, double upsilon, double rate,
                     const SeriesControl& ctl);

  double operator()(double t) const;

 private:
  struct Term {
    detail::wide scale;     // f_j Gamma(e_j + 1)
    detail::wide exponent;  // e_j
    MittagLefflerSeries inner;
  };

  double upsilon_;
  detail::wide rate_power_;  // rate^v
  SeriesControl ctl_;
  std::vector<Term> terms_;
};

/// Closed-form evaluator for the problem's own variant and forcing.
ClosedFormSolution closed_form(const KineticProblem& problem, const SeriesControl& ctl);

double solve_thm1(const KineticProblem& problem, double t, const SeriesControl& ctl = {});
double solve_thm2(const KineticProblem& problem, double t, const SeriesControl& ctl = {});
double solve_thm3(const KineticProblem& problem, double t, const SeriesControl& ctl = {});

/// The k = 1 corollary formulas, written with the classical gamma function
/// in the denominator. Require k == 1.
double solve_corollary1(const KineticProblem& problem, double t, const SeriesControl& ctl = {});
double solve_corollary2(const KineticProblem& problem, double t, const SeriesControl& ctl = {});
double solve_corollary3(const KineticProblem& problem, double t, const SeriesControl& ctl = {});

/// Closed-form solution tabulated on a strictly increasing grid of t >= 0.
/// Element failures are rethrown with the offending index in the message.
SolutionTable solve_table(const KineticProblem& problem, std::span<const double> grid,
                          const SeriesControl& ctl = {});

}  // namespace fkin
