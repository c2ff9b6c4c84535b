#include "fkin/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fkin/error.hpp"
#include "fkin/kgamma.hpp"

namespace fkin {

using detail::wide;

namespace {

std::string str(double v) { return format_number(v); }

void require_order(double upsilon) {
  if (!(upsilon > 0.0) || !std::isfinite(upsilon)) {
    throw NumericError(ErrorKind::domain, "fractional order must be positive, got " + str(upsilon));
  }
}

// Product-trapezoidal weights of order v on a grid. Uniform grids use the
// closed-form lag weights; graded grids integrate each interval directly.
class ProductTrapezoid {
 public:
  ProductTrapezoid(double upsilon, const QuadratureGrid& grid)
      : upsilon_(upsilon), grid_(grid), inv_gamma_(1.0 / gamma(upsilon)) {
    if (grid.uniform()) {
      scale_ = std::pow(grid.step(), upsilon) / gamma(upsilon + 2.0);
      powers_.resize(grid.n() + 1);
      for (int m = 0; m <= grid.n(); ++m) powers_[m] = std::pow(double(m), upsilon + 1.0);
    } else {
      nodes_ = grid.nodes();
    }
  }

  // Weight of f_n in (I^v f)(t_n).
  double diagonal(int n) const {
    if (grid_.uniform()) return scale_;
    const double h = nodes_[n] - nodes_[n - 1];
    return std::pow(h, upsilon_) * inv_gamma_ / (upsilon_ * (upsilon_ + 1.0));
  }

  // (I^v f)(t_n) without the f_n term.
  double history(std::span<const double> f, int n) const {
    if (grid_.uniform()) {
      double acc = start(n) * f[0];
      for (int j = 1; j < n; ++j) acc += lag(n - j) * f[j];
      return scale_ * acc;
    }
    // Interval [t_j, t_j+1] with A = t_n - t_j, B = t_n - t_j+1 contributes
    //   f_j (P - B Q)/h + f_j+1 (A Q - P)/h,
    //   P = (A^(v+1) - B^(v+1))/(v+1),  Q = (A^v - B^v)/v.
    const double tn = nodes_[n];
    double acc = 0.0;
    double a_pow = std::pow(tn, upsilon_);
    for (int j = 0; j < n; ++j) {
      const double a = tn - nodes_[j];
      const double b = tn - nodes_[j + 1];
      const double h = nodes_[j + 1] - nodes_[j];
      const double b_pow = std::pow(b, upsilon_);
      const double p = (a_pow * a - b_pow * b) / (upsilon_ + 1.0);
      const double q = (a_pow - b_pow) / upsilon_;
      acc += f[j] * (p - b * q) / h;
      if (j + 1 < n) acc += f[j + 1] * (a * q - p) / h;
      a_pow = b_pow;
    }
    return acc * inv_gamma_;
  }

 private:
  double lag(int m) const { return powers_[m + 1] - 2.0 * powers_[m] + powers_[m - 1]; }
  double start(int n) const {
    return powers_[n - 1] - (n - 1 - upsilon_) * std::pow(double(n), upsilon_);
  }

  double upsilon_;
  const QuadratureGrid& grid_;
  double inv_gamma_;
  double scale_ = 0.0;
  std::vector<double> powers_;
  std::vector<double> nodes_;
};

void check_samples(std::span<const double> f, const QuadratureGrid& grid) {
  if (f.size() != static_cast<std::size_t>(grid.n()) + 1) {
    throw NumericError(ErrorKind::mismatch, "expected " + std::to_string(grid.n() + 1) +
                                                " samples, got " + std::to_string(f.size()));
  }
}

}  // namespace

QuadratureGrid::QuadratureGrid(int n, double t_max, double grading)
    : n_(n), t_max_(t_max), grading_(grading) {
  if (n < 8) throw NumericError(ErrorKind::invariant, "grid needs n >= 8, got " + std::to_string(n));
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw NumericError(ErrorKind::invariant, "grid needs t_max > 0, got " + str(t_max));
  }
  if (!(grading >= 1.0) || !std::isfinite(grading)) {
    throw NumericError(ErrorKind::invariant, "grid grading must be >= 1, got " + str(grading));
  }
}

double QuadratureGrid::node(int i) const noexcept {
  if (i == n_) return t_max_;
  if (uniform()) return i * step();
  return t_max_ * std::pow(double(i) / n_, grading_);
}

std::vector<double> QuadratureGrid::nodes() const {
  std::vector<double> t(n_ + 1);
  for (int i = 0; i <= n_; ++i) t[i] = node(i);
  return t;
}

std::vector<double> rl_integral(std::span<const double> f, double upsilon, const QuadratureGrid& grid) {
  require_order(upsilon);
  check_samples(f, grid);
  const ProductTrapezoid weights(upsilon, grid);
  std::vector<double> out(f.size(), 0.0);
  for (int n = 1; n <= grid.n(); ++n) out[n] = weights.history(f, n) + weights.diagonal(n) * f[n];
  return out;
}

std::vector<double> rl_integral(const std::function<double(double)>& f, double upsilon,
                                const QuadratureGrid& grid) {
  std::vector<double> samples(grid.n() + 1);
  for (int i = 0; i <= grid.n(); ++i) samples[i] = f(grid.node(i));
  return rl_integral(samples, upsilon, grid);
}

std::vector<double> forcing_values(const KineticProblem& problem, Forcing forcing,
                                   const QuadratureGrid& grid, const SeriesControl& ctl) {
  const auto& p = problem.params();
  std::vector<double> values(grid.n() + 1);
  if (forcing == Forcing::constant) {
    std::fill(values.begin(), values.end(), p.n0);
    return values;
  }
  const KStruveSeries struve(p.struve, ctl);
  const double dv = std::pow(p.d, p.upsilon);
  for (int i = 0; i <= grid.n(); ++i) {
    const double t = grid.node(i);
    const double x = forcing == Forcing::struve_t ? t : dv * std::pow(t, p.upsilon);
    values[i] = p.n0 * struve(x);
  }
  return values;
}

SolutionTable volterra_solve(const KineticProblem& problem, Forcing forcing,
                             const QuadratureGrid& grid, const SeriesControl& ctl) {
  const double upsilon = problem.params().upsilon;
  const double rate_power = std::pow(problem.rate(), upsilon);
  const auto rhs = forcing_values(problem, forcing, grid, ctl);
  const ProductTrapezoid weights(upsilon, grid);

  SolutionTable table{grid.nodes(), std::vector<double>(grid.n() + 1)};
  table.n[0] = rhs[0];
  for (int n = 1; n <= grid.n(); ++n) {
    const double diagonal = 1.0 + rate_power * weights.diagonal(n);
    if (!(diagonal > 0.0)) {
      throw NumericError(ErrorKind::singular, "1 + r^v w_nn = " + str(diagonal) + " at step " +
                                                  std::to_string(n));
    }
    const double hist = rate_power == 0.0 ? 0.0 : weights.history(table.n, n);
    table.n[n] = (rhs[n] - rate_power * hist) / diagonal;
  }
  return table;
}

ResidualReport residual(const KineticProblem& problem, const SolutionTable& sol,
                        const QuadratureGrid& grid, const SeriesControl& ctl) {
  return residual(problem, problem.forcing(), sol, grid, ctl);
}

ResidualReport residual(const KineticProblem& problem, Forcing forcing, const SolutionTable& sol,
                        const QuadratureGrid& grid, const SeriesControl& ctl) {
  sol.validate();
  check_samples(sol.n, grid);
  for (int i = 0; i <= grid.n(); ++i) {
    if (std::abs(sol.t[i] - grid.node(i)) > 1e-12 * grid.t_max()) {
      throw NumericError(ErrorKind::mismatch, "table t[" + std::to_string(i) + "] = " + str(sol.t[i]) +
                                                  " is not grid node " + str(grid.node(i)));
    }
  }
  const double upsilon = problem.params().upsilon;
  const double rate_power = std::pow(problem.rate(), upsilon);
  const auto rhs = forcing_values(problem, forcing, grid, ctl);
  const auto integral = rl_integral(sol.n, upsilon, grid);

  ResidualReport report;
  double total = 0.0;
  for (int i = 0; i <= grid.n(); ++i) {
    const double defect = std::abs(sol.n[i] - rhs[i] + rate_power * integral[i]);
    total += defect;
    if (defect > report.max_defect) {
      report.max_defect = defect;
      report.argmax_t = sol.t[i];
    }
  }
  report.mean_defect = total / (grid.n() + 1);
  return report;
}

double laplace_image(const KineticProblem& problem, double s, const SeriesControl& ctl) {
  const double rate = problem.rate();
  if (!(s > rate) || !std::isfinite(s)) {
    throw NumericError(ErrorKind::range, "Laplace image needs s > " + str(rate) + ", got " + str(s));
  }
  const auto terms = forcing_terms(problem, problem.forcing(), ctl);
  const wide sw = s;
  const wide upsilon = problem.params().upsilon;
  const wide denominator = 1 + powq(wide(rate), upsilon) * powq(sw, -upsilon);
  detail::CompensatedSum<wide> sum;
  wide previous = 0;
  for (std::size_t j = 0; j < terms.size(); ++j) {
    const wide beta = terms[j].exponent + 1;
    const wide term = terms[j].coefficient * detail::gamma_wide(beta) * powq(sw, -beta);
    const bool last = j > 0 && detail::series_exhausted(term, previous, sum.value(), ctl.rel_tol);
    sum.add(term);
    if (last) break;
    previous = term;
  }
  return double(sum.value() / denominator);
}

LaplaceEstimate numeric_laplace(const SolutionTable& table, double s) {
  table.validate();
  const std::size_t intervals = table.t.empty() ? 0 : table.t.size() - 1;
  if (intervals < 2 || intervals % 2 != 0) {
    throw NumericError(ErrorKind::domain, "Simpson transform needs an even number of intervals, got " +
                                              std::to_string(intervals));
  }
  if (!(s > 0.0)) throw NumericError(ErrorKind::domain, "Laplace variable must be positive");
  const double h = (table.t.back() - table.t.front()) / double(intervals);
  for (std::size_t i = 1; i < table.t.size(); ++i) {
    if (std::abs(table.t[i] - table.t[i - 1] - h) > 1e-9 * h) {
      throw NumericError(ErrorKind::mismatch, "Simpson transform needs a uniform table");
    }
  }
  detail::CompensatedSum<double> sum;
  double max_abs = 0.0;
  for (std::size_t i = 0; i <= intervals; ++i) {
    const double weight = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    sum.add(weight * std::exp(-s * table.t[i]) * table.n[i]);
    max_abs = std::max(max_abs, std::abs(table.n[i]));
  }
  return {sum.value() * h / 3.0, std::exp(-s * table.t.back()) * max_abs / s};
}

}  // namespace fkin
