#pragma once

// Independent numerical checks for the closed forms.
//
// The Riemann-Liouville integral
//
//   (I^v f)(t) = 1/Gamma(v) * integral_0^t (t - s)^(v-1) f(s) ds
//
// is discretized by product-trapezoidal weights on a uniform grid: f is
// replaced by its piecewise-linear interpolant and the weakly singular kernel
// is integrated exactly against it. With h = t_max/n,
//
//   (I^v f)(t_n) ~ h^v / Gamma(v + 2) * [ a_0 f_0 + sum_{j=1}^{n-1} a_{n-j} f_j + f_n ]
//   a_0 = (n-1)^(v+1) - (n-1-v) n^v
//   a_m = (m+1)^(v+1) - 2 m^(v+1) + (m-1)^(v+1)
//
// On a graded grid t_i = t_max (i/n)^g the same piecewise-linear rule is
// integrated interval by interval; grading restores second order when f
// behaves like t^mu with mu < 1 near the origin.
//
// The same weights drive a marching solver for the second-kind Volterra
// equation N = N0 F - r^v I^v N, with the diagonal weight moved to the left.

#include <functional>
#include <span>
#include <vector>

#include "fkin/kinetics.hpp"
#include "fkin/special.hpp"

namespace fkin {

/// Partition 0 = t_0 < ... < t_n = t_max with n >= 8, uniform by default.
/// A grading exponent g >= 1 places nodes at t_max (i/n)^g.
class QuadratureGrid {
 public:
  QuadratureGrid(int n, double t_max, double grading = 1.0);

  int n() const noexcept { return n_; }
  double t_max() const noexcept { return t_max_; }
  double grading() const noexcept { return grading_; }
  bool uniform() const noexcept { return grading_ == 1.0; }
  /// Nominal step t_max / n (the actual step on uniform grids).
  double step() const noexcept { return t_max_ / n_; }
  double node(int i) const noexcept;
  std::vector<double> nodes() const;

 private:
  int n_;
  double t_max_;
  double grading_;
};

struct ResidualReport {
  double max_defect = 0.0;
  double mean_defect = 0.0;
  double argmax_t = 0.0;
};

/// I^v applied to samples of f at the grid nodes; returns n + 1 values with
/// the first equal to zero.
std::vector<double> rl_integral(std::span<const double> f, double upsilon, const QuadratureGrid& grid);
std::vector<double> rl_integral(const std::function<double(double)>& f, double upsilon,
                                const QuadratureGrid& grid);

/// N0 F(t_i) at the grid nodes for the given forcing.
std::vector<double> forcing_values(const KineticProblem& problem, Forcing forcing,
                                   const QuadratureGrid& grid, const SeriesControl& ctl = {});

/// Marches N(t_i) = N0 F(t_i) - r^v (I^v N)(t_i) across the grid, r being the
/// problem's rate (d, or a for thm3).
SolutionTable volterra_solve(const KineticProblem& problem, Forcing forcing,
                             const QuadratureGrid& grid, const SeriesControl& ctl = {});

/// Defect N_i - N0 F(t_i) + r^v (I^v N)(t_i) of a tabulated candidate
/// solution, using the problem's own forcing unless one is given.
ResidualReport residual(const KineticProblem& problem, const SolutionTable& sol,
                        const QuadratureGrid& grid, const SeriesControl& ctl = {});
ResidualReport residual(const KineticProblem& problem, Forcing forcing, const SolutionTable& sol,
                        const QuadratureGrid& grid, const SeriesControl& ctl = {});

/// Laplace image of the closed-form solution,
///   N(s) = sum_j f_j Gamma(e_j + 1) s^-(e_j + 1) / (1 + r^v s^-v),
/// i.e. the geometric series in r^v s^-v summed in closed form. Requires s > r.
double laplace_image(const KineticProblem& problem, double s, const SeriesControl& ctl = {});

struct LaplaceEstimate {
  double value = 0.0;
  /// Bound on the neglected tail: exp(-s t_max) max|N| / s.
  double tail_bound = 0.0;
};

/// Composite Simpson transform of a uniformly tabulated function over
/// [t_0, t_max]. Needs an even number of intervals.
LaplaceEstimate numeric_laplace(const SolutionTable& table, double s);

}  // namespace fkin
