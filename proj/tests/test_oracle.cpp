#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "fkin/error.hpp"
#include "fkin/kinetics.hpp"
#include "fkin/oracle.hpp"
#include "support/reference_values.hpp"

using namespace fkin;

namespace {

KineticProblem thm1(double d = 1.0, double upsilon = 1.0, double k = 1.0, double l = 1.0) {
  KineticParams p;
  p.d = d;
  p.upsilon = upsilon;
  p.struve = {l, 1.0, k};
  return KineticProblem(p);
}

double power_rule_error(double mu, double upsilon, int n, double grading) {
  const QuadratureGrid grid(n, 1.0, grading);
  const auto out = rl_integral([mu](double s) { return std::pow(s, mu); }, upsilon, grid);
  const double scale = std::tgamma(mu + 1) / std::tgamma(mu + 1 + upsilon);
  double err = 0.0;
  for (int i = 0; i <= n; ++i) {
    err = std::max(err, std::abs(out[i] - scale * std::pow(grid.node(i), mu + upsilon)));
  }
  return err;
}

double max_abs_diff_on_coarse(const std::vector<double>& coarse, const std::vector<double>& fine) {
  const std::size_t stride = (fine.size() - 1) / (coarse.size() - 1);
  double m = 0.0;
  for (std::size_t i = 0; i < coarse.size(); ++i) m = std::max(m, std::abs(coarse[i] - fine[i * stride]));
  return m;
}

SolutionTable tabulate(const QuadratureGrid& grid, std::vector<double> values) {
  return {grid.nodes(), std::move(values)};
}

}  // namespace

TEST_CASE("grid construction") {
  CHECK_THROWS_AS(QuadratureGrid(7, 1.0), NumericError);
  CHECK_THROWS_AS(QuadratureGrid(8, 0.0), NumericError);
  CHECK_THROWS_AS(QuadratureGrid(8, 1.0, 0.5), NumericError);
  const QuadratureGrid g(8, 2.0);
  CHECK(g.uniform());
  CHECK(g.step() == 0.25);
  const auto nodes = g.nodes();
  REQUIRE(nodes.size() == 9);
  CHECK(nodes.front() == 0.0);
  CHECK(nodes.back() == 2.0);
  for (int i = 0; i <= 8; ++i) CHECK(nodes[i] == doctest::Approx(0.25 * i));
  const QuadratureGrid graded(10, 1.0, 2.0);
  CHECK(graded.node(5) == doctest::Approx(0.25));
  CHECK(graded.node(10) == 1.0);
}

TEST_CASE("rl_integral basics") {
  const QuadratureGrid g(64, 2.0);
  const auto zero = rl_integral([](double) { return 0.0; }, 0.7, g);
  CHECK(std::all_of(zero.begin(), zero.end(), [](double v) { return v == 0.0; }));
  const auto plain = rl_integral([](double) { return 1.0; }, 1.0, g);
  CHECK(plain.front() == 0.0);
  CHECK(plain.back() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(rl_integral([](double) { return 1.0; }, 0.0, g), NumericError);
  const std::vector<double> short_samples(10, 1.0);
  CHECK_THROWS_AS(rl_integral(short_samples, 0.5, g), NumericError);
}

TEST_CASE("power rule example, mu = 1, v = 0.5") {
  const QuadratureGrid g(256, 1.0);
  const auto out = rl_integral([](double s) { return s; }, 0.5, g);
  CHECK(std::abs(out.back() - testing::ref::rl_half_of_s_at_1) <= 1e-13);
}

TEST_CASE("power rule order on graded grids") {
  for (double mu : {0.5, 2.0}) {
    for (double upsilon : {0.5, 1.0}) {
      const double e1 = power_rule_error(mu, upsilon, 256, 2.0);
      const double e2 = power_rule_error(mu, upsilon, 512, 2.0);
      const double e3 = power_rule_error(mu, upsilon, 1024, 2.0);
      CHECK(std::log2(e1 / e2) >= 1.8);
      CHECK(std::log2(e2 / e3) >= 1.8);
    }
  }
  // linear data is integrated exactly
  for (double upsilon : {0.5, 1.0}) CHECK(power_rule_error(1.0, upsilon, 256, 2.0) <= 1e-13);
}

TEST_CASE("power rule order on uniform grids is limited by the t^mu start") {
  // min(2, 1 + mu, mu + v) at the nodes nearest the origin
  const auto order = [](double mu, double upsilon) {
    return std::log2(power_rule_error(mu, upsilon, 512, 1.0) / power_rule_error(mu, upsilon, 1024, 1.0));
  };
  CHECK(order(0.5, 0.5) == doctest::Approx(1.0).epsilon(0.05));
  CHECK(order(0.5, 1.0) == doctest::Approx(1.5).epsilon(0.05));
  CHECK(order(2.0, 0.5) >= 1.8);
  CHECK(order(2.0, 1.0) >= 1.8);
  for (double upsilon : {0.5, 1.0}) CHECK(power_rule_error(1.0, upsilon, 512, 1.0) <= 1e-13);
}

TEST_CASE("semigroup property within C h") {
  const double C = 2e-4;
  const KStruveSeries f(KStruveParams{}, SeriesControl{});
  for (int n : {256, 512, 1024}) {
    const QuadratureGrid g(n, 1.0);
    std::vector<double> samples;
    for (double t : g.nodes()) samples.push_back(f(t));
    for (double u1 : {0.3, 0.5, 1.0}) {
      const auto once = rl_integral(samples, u1, g);
      for (double u2 : {0.3, 0.5, 1.0}) {
        const auto twice = rl_integral(once, u2, g);
        const auto direct = rl_integral(samples, u1 + u2, g);
        double err = 0.0;
        for (int i = 0; i <= n; ++i) err = std::max(err, std::abs(twice[i] - direct[i]));
        CHECK(err <= C * g.step());
      }
    }
  }
}

TEST_CASE("Volterra march convergence order") {
  // The solution starts like t^(l/k + 1); on uniform grids the order is
  // min(2, l/k + 1 + v), on grids graded with g = 2 it is 2.
  for (double upsilon : {0.5, 1.0, 1.5}) {
    for (double k : {1.0, 2.0, 3.0}) {
      for (double l : {0.5, 1.0}) {
        const auto p = thm1(1.0, upsilon, k, l);
        for (double grading : {1.0, 2.0}) {
          std::vector<std::vector<double>> sols;
          for (int n : {256, 512, 1024}) {
            sols.push_back(volterra_solve(p, p.forcing(), QuadratureGrid(n, 1.0, grading)).n);
          }
          const double d1 = max_abs_diff_on_coarse(sols[0], sols[1]);
          const double d2 = max_abs_diff_on_coarse(sols[1], sols[2]);
          const double expected = grading == 1.0 ? std::min(2.0, l / k + 1 + upsilon) : 2.0;
          CAPTURE(upsilon);
          CAPTURE(k);
          CAPTURE(l);
          CAPTURE(grading);
          CHECK(d1 <= 4.1 * d2);
          CHECK(std::log2(d1 / d2) >= std::min(1.8, expected - 0.15));
          if (grading == 2.0) CHECK(std::log2(d1 / d2) >= 1.8);
        }
      }
    }
  }
}

TEST_CASE("Volterra examples") {
  SUBCASE("d = 0 returns the forcing") {
    const auto p = thm1(0.0, 0.7, 2.0);
    const QuadratureGrid g(64, 1.0);
    const auto table = volterra_solve(p, Forcing::struve_t, g);
    const KStruveSeries s(p.params().struve, SeriesControl{});
    for (int i = 0; i <= 64; ++i) CHECK(table.n[i] == s(g.node(i)));
  }
  SUBCASE("constant forcing gives exp(-t) to O(h^2)") {
    const auto p = thm1();
    double prev = 0.0;
    for (int n : {64, 128, 256, 512}) {
      const QuadratureGrid g(n, 1.0);
      const auto table = volterra_solve(p, Forcing::constant, g);
      double err = 0.0;
      for (int i = 0; i <= n; ++i) err = std::max(err, std::abs(table.n[i] - std::exp(-g.node(i))));
      CHECK(err <= 0.05 * g.step() * g.step());
      if (prev > 0.0) CHECK(std::log2(prev / err) >= 1.9);
      prev = err;
    }
  }
  SUBCASE("THM1 defaults against the closed form") {
    const auto p = thm1();
    const QuadratureGrid g(4096, 1.0);
    const auto march = volterra_solve(p, p.forcing(), g);
    const auto closed = solve_table(p, g.nodes());
    double gap = 0.0, top = 0.0;
    for (int i = 0; i <= 4096; ++i) {
      gap = std::max(gap, std::abs(march.n[i] - closed.n[i]));
      top = std::max(top, std::abs(closed.n[i]));
    }
    CHECK(gap <= 5e-4 * top);
  }
}

TEST_CASE("residual reports") {
  const auto p = thm1(1.0, 0.6, 2.0);
  const QuadratureGrid g(512, 1.0);
  const auto march = volterra_solve(p, p.forcing(), g);
  const auto self = residual(p, march, g);
  CHECK(self.max_defect <= 1e-12);
  CHECK(self.mean_defect <= self.max_defect);

  const auto zero = residual(p, tabulate(g, std::vector<double>(513, 0.0)), g);
  const auto forcing = forcing_values(p, p.forcing(), g);
  double peak = 0.0;
  for (double v : forcing) peak = std::max(peak, std::abs(v));
  CHECK(zero.max_defect == peak);
  CHECK(zero.argmax_t == 1.0);

  const QuadratureGrid other(256, 1.0);
  CHECK_THROWS_AS(residual(p, march, other), NumericError);
  const QuadratureGrid longer(512, 2.0);
  CHECK_THROWS_AS(residual(p, march, longer), NumericError);
}

TEST_CASE("laplace_image") {
  SUBCASE("d -> 0 matches quadrature of the forcing transform") {
    const auto p = thm1(1e-300);
    CHECK(std::abs(laplace_image(p, 3.0) - testing::ref::laplace_struve1_at_3) <= 1e-6);
  }
  SUBCASE("decays as s grows") {
    const auto p = thm1();
    const double a = laplace_image(p, 1e3), b = laplace_image(p, 1e4);
    CHECK(a > 0.0);
    CHECK(b > 0.0);
    CHECK(b < a);
  }
  SUBCASE("numeric transform of the THM1 table at s = 5") {
    const auto p = thm1();
    const QuadratureGrid g(4000, 10.0);
    const auto table = solve_table(p, g.nodes());
    const auto est = numeric_laplace(table, 5.0);
    const double image = laplace_image(p, 5.0);
    CHECK(std::abs(est.value - image) + est.tail_bound <= 1e-3 * std::abs(image));
  }
  SUBCASE("s must exceed the rate") {
    const auto p = thm1(2.0);
    try {
      laplace_image(p, 2.0);
      FAIL("expected a range error");
    } catch (const NumericError& e) {
      CHECK(e.kind() == ErrorKind::range);
    }
  }
}

TEST_CASE("numeric_laplace needs an even uniform table") {
  const QuadratureGrid odd(9, 1.0);
  CHECK_THROWS_AS(numeric_laplace(tabulate(odd, std::vector<double>(10, 1.0)), 1.0), NumericError);
  const QuadratureGrid graded(8, 1.0, 2.0);
  CHECK_THROWS_AS(numeric_laplace(tabulate(graded, std::vector<double>(9, 1.0)), 1.0), NumericError);
  const QuadratureGrid g(400, 20.0);
  const auto one = numeric_laplace(tabulate(g, std::vector<double>(401, 1.0)), 2.0);
  // Simpson error h^4 s^3 / 180 is about 3e-7 here
  CHECK(std::abs(one.value - 0.5) <= 1e-6);
}

TEST_CASE("transform of I^v f equals s^-v times transform of f") {
  const KStruveSeries f(KStruveParams{}, SeriesControl{});
  const QuadratureGrid g(4000, 10.0);
  std::vector<double> samples;
  for (double t : g.nodes()) samples.push_back(f(t));
  const auto lf = [&](double s) { return numeric_laplace(tabulate(g, samples), s); };
  for (double upsilon : {0.5, 1.0, 1.5}) {
    const auto integrated = rl_integral(samples, upsilon, g);
    for (double s : {3.0, 5.0, 10.0}) {
      const auto lhs = numeric_laplace(tabulate(g, integrated), s);
      const auto rhs = lf(s);
      const double want = std::pow(s, -upsilon) * rhs.value;
      CHECK(std::abs(lhs.value - want) + lhs.tail_bound <= 1e-4 * std::abs(want));
    }
  }
}
