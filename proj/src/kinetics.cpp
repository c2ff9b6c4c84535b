#include "fkin/kinetics.hpp"

#include <cmath>
#include <string>

#include "fkin/error.hpp"
#include "fkin/kgamma.hpp"

namespace fkin {

using detail::wide;

namespace {

std::string str(double v) { return format_number(v); }

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw NumericError(ErrorKind::invariant,
                       std::string(name) + " must be finite and positive, got " + str(value));
  }
}

void require_variant(const KineticProblem& problem, Variant expected, const char* who) {
  if (problem.variant() != expected) {
    throw NumericError(ErrorKind::invariant, std::string(who) + " called with a problem of another variant");
  }
}

void require_time(double t) {
  if (std::isnan(t) || t < 0.0) {
    throw NumericError(ErrorKind::domain, "t must be >= 0, got " + str(t));
  }
}

// Rescales k-Struve power terms in (x/2) into N0 F(t) for the chosen forcing.
// `printed_exponents` substitutes m = 2r + l + 1 for the dt forcing.
std::vector<ForcingTerm> scale_struve_terms(std::vector<detail::PowerTerm> terms,
                                            const KineticParams& p, Forcing forcing,
                                            bool printed_exponents) {
  const wide n0 = p.n0;
  if (forcing == Forcing::struve_t) {
    // a_r (t/2)^m = a_r 2^-m t^m
    for (auto& term : terms) term.coefficient *= n0 * powq(wide(2), -term.exponent);
    return terms;
  }
  const wide upsilon = p.upsilon;
  const wide half_scale = powq(wide(p.d), upsilon) / 2;
  for (std::size_t r = 0; r < terms.size(); ++r) {
    auto& term = terms[r];
    const wide m = printed_exponents ? wide(2 * static_cast<int>(r)) + wide(p.struve.nu) + 1
                                     : term.exponent;
    // a_r (d^v t^v / 2)^m = a_r (d^v/2)^m t^(v m)
    term.coefficient *= n0 * powq(half_scale, m);
    term.exponent = upsilon * m;
  }
  return terms;
}

double evaluate_corollary(const KineticProblem& problem, Variant variant, double t,
                          const SeriesControl& ctl, const char* who) {
  require_variant(problem, variant, who);
  require_time(t);
  ctl.validate();
  const auto& p = problem.params();
  if (p.struve.k != 1.0) {
    throw NumericError(ErrorKind::invariant, std::string(who) + " requires k = 1, got " + str(p.struve.k));
  }
  auto terms = detail::struve_terms(p.struve.nu, p.struve.c, ctl.max_terms);
  terms = scale_struve_terms(std::move(terms), p, problem.forcing(), false);
  return ClosedFormSolution(terms, p.upsilon, problem.rate(), ctl)(t);
}

}  // namespace

KineticProblem::KineticProblem(const KineticParams& params) : params_(params) {
  require_positive(params.n0, "n0");
  require_positive(params.upsilon, "upsilon");
  if (!(params.d >= 0.0) || !std::isfinite(params.d)) {
    throw NumericError(ErrorKind::invariant, "d must be finite and >= 0, got " + str(params.d));
  }
  params.struve.validate();
  if (params.variant == Variant::thm3) {
    if (!params.a) throw NumericError(ErrorKind::invariant, "thm3 requires the rate constant a");
    require_positive(*params.a, "a");
    if (*params.a == params.d) {
      throw NumericError(ErrorKind::invariant, "thm3 requires a != d, both are " + str(params.d));
    }
  }
}

double KineticProblem::rate() const noexcept {
  return params_.variant == Variant::thm3 ? *params_.a : params_.d;
}

Forcing KineticProblem::forcing() const noexcept {
  return params_.variant == Variant::thm1 ? Forcing::struve_t : Forcing::struve_dt;
}

void SolutionTable::validate() const {
  if (t.size() != n.size()) {
    throw NumericError(ErrorKind::invariant, "solution table columns differ in length");
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] >= 0.0) || (i > 0 && !(t[i] > t[i - 1]))) {
      throw NumericError(ErrorKind::invariant, "solution table t must be >= 0 and strictly increasing (index " +
                                                   std::to_string(i) + ")");
    }
  }
}

std::vector<ForcingTerm> forcing_terms(const KineticProblem& problem, Forcing forcing,
                                       const SeriesControl& ctl) {
  ctl.validate();
  const auto& p = problem.params();
  if (forcing == Forcing::constant) return {ForcingTerm{wide(p.n0), wide(0)}};
  return scale_struve_terms(detail::k_struve_terms(p.struve, ctl.max_terms), p, forcing,
                            p.reading == ExponentReading::printed);
}

ClosedFormSolution::ClosedFormSolution(std::span<const ForcingTerm> forcing, double upsilon,
                                       double rate, const SeriesControl& ctl)
    : upsilon_(upsilon), ctl_(ctl) {
  ctl.validate();
  require_positive(upsilon, "upsilon");
  if (!(rate >= 0.0) || !std::isfinite(rate)) {
    throw NumericError(ErrorKind::invariant, "rate must be finite and >= 0, got " + str(rate));
  }
  rate_power_ = powq(wide(rate), wide(upsilon));
  terms_.reserve(forcing.size());
  for (const auto& f : forcing) {
    const wide beta = f.exponent + 1;
    terms_.push_back(Term{f.coefficient * detail::gamma_wide(beta), f.exponent,
                          MittagLefflerSeries(upsilon, beta, ctl)});
  }
}

double ClosedFormSolution::operator()(double t) const {
  require_time(t);
  const wide tw = t;
  const wide z = -rate_power_ * powq(tw, wide(upsilon_));
  if (detail::abs(z) > kMittagLefflerArgCap) {
    throw NumericError(ErrorKind::range, "rate^v t^v = " + str(double(-z)) +
                                             " exceeds the Mittag-Leffler cap " +
                                             str(kMittagLefflerArgCap));
  }
  detail::CompensatedSum<wide> sum;
  wide previous = 0;
  const auto limit = std::min<std::size_t>(terms_.size(), static_cast<std::size_t>(ctl_.max_terms));
  for (std::size_t j = 0; j < limit; ++j) {
    const auto& term = terms_[j];
    const wide value = term.scale * powq(tw, term.exponent) * term.inner.evaluate(z);
    if (!detail::is_finite(value)) {
      throw NumericError(ErrorKind::range, "closed form is singular at t = " + str(t));
    }
    const bool last = j > 0 && detail::series_exhausted(value, previous, sum.value(), ctl_.rel_tol);
    sum.add(value);
    if (last) break;
    previous = value;
  }
  return double(sum.value());
}

ClosedFormSolution closed_form(const KineticProblem& problem, const SeriesControl& ctl) {
  const auto terms = forcing_terms(problem, problem.forcing(), ctl);
  return ClosedFormSolution(terms, problem.params().upsilon, problem.rate(), ctl);
}

double solve_thm1(const KineticProblem& problem, double t, const SeriesControl& ctl) {
  require_variant(problem, Variant::thm1, "solve_thm1");
  require_time(t);
  return closed_form(problem, ctl)(t);
}

double solve_thm2(const KineticProblem& problem, double t, const SeriesControl& ctl) {
  require_variant(problem, Variant::thm2, "solve_thm2");
  require_time(t);
  return closed_form(problem, ctl)(t);
}

double solve_thm3(const KineticProblem& problem, double t, const SeriesControl& ctl) {
  require_variant(problem, Variant::thm3, "solve_thm3");
  require_time(t);
  return closed_form(problem, ctl)(t);
}

double solve_corollary1(const KineticProblem& problem, double t, const SeriesControl& ctl) {
  return evaluate_corollary(problem, Variant::thm1, t, ctl, "solve_corollary1");
}

double solve_corollary2(const KineticProblem& problem, double t, const SeriesControl& ctl) {
  return evaluate_corollary(problem, Variant::thm2, t, ctl, "solve_corollary2");
}

double solve_corollary3(const KineticProblem& problem, double t, const SeriesControl& ctl) {
  return evaluate_corollary(problem, Variant::thm3, t, ctl, "solve_corollary3");
}

SolutionTable solve_table(const KineticProblem& problem, std::span<const double> grid,
                          const SeriesControl& ctl) {
  SolutionTable table;
  table.t.assign(grid.begin(), grid.end());
  table.n.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw NumericError(ErrorKind::domain, "grid must be >= 0 and strictly increasing (index " +
                                                std::to_string(i) + ")");
    }
  }
  const auto solution = closed_form(problem, ctl);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    try {
      table.n[i] = solution(grid[i]);
    } catch (const NumericError& e) {
      throw NumericError(e.kind(), "grid index " + std::to_string(i) + " (t = " + str(grid[i]) +
                                       "): " + e.what());
    }
  }
  return table;
}

}  // namespace fkin
