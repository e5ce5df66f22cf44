#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "msm/annealed.hpp"
#include "msm/special_functions.hpp"
#include "support.hpp"

namespace {

// Inner y-integral done in closed form:
//   Cbar(a) = alpha Gamma(1 - alpha) / a^2 * int g(b x) x^(-1-alpha) [b^a + x^a - (b + x)^a] dx
double one_dim_oracle(double a, double alpha) {
  const double b = std::pow(a, 1.0 / alpha) * msm::tau_alpha(alpha);
  const double ba = std::pow(b, alpha);
  auto f = [&](double x) {
    if (x < 1e-8 * std::min(b, 1.0 / b)) return b * (1.0 - alpha * std::pow(x / b, 1.0 - alpha));
    const double g = -std::expm1(-b * x);
    const double xa = std::pow(x, alpha);
    const double bracket = x < b ? xa - ba * std::expm1(alpha * std::log1p(x / b))
                                 : ba - xa * std::expm1(alpha * std::log1p(b / x));
    return g * std::pow(x, -1.0 - alpha) * bracket;
  };
  std::vector<double> cuts{0.0, std::min(1.0 / b, b), 1.0, std::max(1.0 / b, b)};
  std::sort(cuts.begin(), cuts.end());
  double integral = testing::integrate_to_infinity(f, cuts.back());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] > cuts[i]) integral += testing::integrate_finite(f, cuts[i], cuts[i + 1]);
  }
  return alpha * msm::gamma(1.0 - alpha) / (a * a) * integral;
}

double laplace_oracle(double a, double alpha) {
  auto f = [&](double w) { return std::exp(-a * w) * alpha * std::pow(w, -1.0 - alpha); };
  return testing::integrate_to_infinity(f, 1.0);
}

}  // namespace

TEST_CASE("leaf regime approaches 1") {
  CHECK(msm::annealed_clustering(1e-3, 0.5, 1e-8).value >= 0.95);
  CHECK(msm::annealed_value(1e-3, 0.5, 1e-8).value >= 0.95);
  for (double alpha : {0.3, 0.5, 0.7}) {
    CAPTURE(alpha);
    CHECK(msm::complementary_form(1e-4, alpha, 1e-8).value >= 0.99);
  }
}

TEST_CASE("hub regime at a = 10") {
  const double c = msm::annealed_clustering(10.0, 0.5, 1e-8).value;
  const double h = msm::hub_asymptotic(10.0, 0.5);
  MESSAGE("Cbar(10) = " << c << ", hub = " << h);
  CHECK(std::abs(c - h) <= 0.35 * h);
}

TEST_CASE("hub ratio approaches 1") {
  double prev_gap = 1e300;
  for (double a : {30.0, 100.0, 300.0}) {
    const double ratio = msm::annealed_clustering(a, 0.5, 1e-9).value / msm::hub_asymptotic(a, 0.5);
    MESSAGE("a = " << a << " ratio " << ratio);
    CHECK(std::abs(ratio - 1.0) < prev_gap);
    prev_gap = std::abs(ratio - 1.0);
    if (a == 300.0) {
      CHECK(ratio >= 0.6);
      CHECK(ratio <= 1.4);
    }
  }
}

TEST_CASE("both routes agree") {
  const double tol = 1e-6;
  for (double alpha : {0.3, 0.5, 0.7}) {
    for (double a : {0.01, 0.1, 1.0, 10.0}) {
      const auto direct = msm::annealed_clustering(a, alpha, tol);
      const auto comp = msm::complementary_form(a, alpha, tol);
      CAPTURE(alpha);
      CAPTURE(a);
      CHECK(std::abs(direct.value - comp.value) <= 2.0 * tol);
      CHECK(std::abs(direct.value - comp.value) <= direct.abs_error + comp.abs_error);
    }
  }
  const auto d = msm::annealed_clustering(1.0, 0.5, 1e-7);
  const auto c = msm::complementary_form(1.0, 0.5, 1e-7);
  CHECK(std::abs(d.value - c.value) <= 2e-7);
}

TEST_CASE("independent one-dimensional oracle") {
  for (double alpha : {0.3, 0.5, 0.7}) {
    for (double a : {0.05, 0.5, 1.0, 3.0, 20.0}) {
      CAPTURE(alpha);
      CAPTURE(a);
      const auto est = msm::annealed_value(a, alpha, 1e-8);
      CHECK(std::abs(est.value - one_dim_oracle(a, alpha)) <= 1e-8);
    }
  }
}

TEST_CASE("bounded by one") {
  for (double alpha : {0.3, 0.5, 0.7}) {
    for (double a : msm::log_grid(1e-4, 1e3, 15)) {
      for (double tol : {1e-4, 1e-7}) {
        const auto e = msm::annealed_value(a, alpha, tol);
        CHECK(e.value <= 1.0 + tol);
        CHECK(e.value <= 1.0 + e.abs_error);
        CHECK(e.value >= -tol);
        CHECK(e.abs_error <= tol);
      }
    }
  }
}

TEST_CASE("halving tol moves values by less than the error estimate") {
  for (double alpha : {0.3, 0.7}) {
    for (double a : {0.02, 0.7, 5.0, 200.0}) {
      const auto coarse = msm::annealed_value(a, alpha, 1e-6);
      const auto fine = msm::annealed_value(a, alpha, 5e-7);
      CAPTURE(alpha);
      CAPTURE(a);
      CHECK(std::abs(coarse.value - fine.value) <= coarse.abs_error + fine.abs_error);
      CHECK(std::abs(coarse.value - fine.value) <= 1e-6);
    }
  }
}

TEST_CASE("tolerance range") {
  CHECK_THROWS_AS(msm::annealed_clustering(1.0, 0.5, 1e-11), std::domain_error);
  CHECK_THROWS_AS(msm::annealed_clustering(1.0, 0.5, 1e-2), std::domain_error);
  CHECK_THROWS_AS(msm::complementary_form(1.0, 0.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(msm::annealed_clustering(0.0, 0.5, 1e-6), std::domain_error);
  CHECK_THROWS_AS(msm::annealed_clustering(1.0, 1.0, 1e-6), std::domain_error);
  CHECK_NOTHROW(msm::annealed_clustering(1.0, 0.5, 1e-10));
  CHECK_NOTHROW(msm::annealed_clustering(1.0, 0.5, 1e-3));
}

TEST_CASE("hub asymptotic") {
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  CHECK(msm::hub_asymptotic(std::numbers::e, 0.5) == doctest::Approx(2.0 * sqrt_pi / (std::numbers::e * std::numbers::e)).epsilon(1e-14));
  CHECK(msm::hub_asymptotic(std::numbers::e, 0.5) == doctest::Approx(0.4797).epsilon(1e-4));
  CHECK(msm::hub_asymptotic(10.0, 0.5) == doctest::Approx(0.08162).epsilon(1e-4));
  double prev = msm::hub_asymptotic(std::numbers::e, 0.5);
  for (double a = 3.0; a < 1e4; a *= 1.3) {
    const double cur = msm::hub_asymptotic(a, 0.5);
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK_THROWS_AS(msm::hub_asymptotic(1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(msm::hub_asymptotic(0.5, 0.5), std::domain_error);
}

TEST_CASE("single integral identity") {
  const auto r = msm::single_integral_oracle(2.0, 0.5, 1e-8);
  CHECK(r.closed_form == 4.0);
  CHECK(std::abs(r.quadrature.value - 4.0) <= 1e-8);
  const auto s = msm::single_integral_oracle(1.0, 0.3, 1e-8);
  CHECK(s.closed_form == doctest::Approx(10.0 / 3.0).epsilon(1e-15));
  CHECK(std::abs(s.quadrature.value - 10.0 / 3.0) <= 1e-8);
  for (double alpha : {0.3, 0.5, 0.7}) {
    for (double a : {0.01, 0.5, 1.0, 2.0, 50.0}) {
      const auto q = msm::single_integral_oracle(a, alpha, 1e-8);
      CHECK(std::abs(q.quadrature.value - q.closed_form) <= 1e-8);
    }
  }
}

TEST_CASE("Pareto Laplace transform") {
  CHECK(msm::pareto_laplace(1.0, 0.5) == doctest::Approx(0.5 * msm::upper_incomplete_gamma(-0.5, 1.0)).epsilon(1e-14));
  CHECK(msm::pareto_laplace(1.0, 0.5) == doctest::Approx(0.0891).epsilon(1e-3));
  for (double alpha : {0.3, 0.5, 0.7}) {
    for (double a : {0.5, 1.0, 2.0}) {
      CAPTURE(alpha);
      CAPTURE(a);
      CHECK(std::abs(msm::pareto_laplace(a, alpha) - laplace_oracle(a, alpha)) <= 1e-8);
    }
  }
  CHECK(std::abs(msm::pareto_laplace(2.0, 0.3) - laplace_oracle(2.0, 0.3)) <= 1e-8);
  // near a = 0 the transform tends to E[1] = 1
  const double tiny = msm::pareto_laplace(1e-6, 0.5);
  MESSAGE("pareto_laplace(1e-6, 0.5) = " << tiny);
  CHECK(std::abs(tiny - laplace_oracle(1e-6, 0.5)) <= 1e-8);
  CHECK(tiny > 0.99);
  CHECK(tiny < 1.0);
}

TEST_CASE("expected degree counts") {
  CHECK(msm::expected_degree_count(100, 10000, 0.5) == doctest::Approx(std::sqrt(std::numbers::pi) / 2).epsilon(1e-14));
  CHECK(msm::expected_degree_count(100, 10000, 0.3) == doctest::Approx(0.3 * msm::gamma(0.7)).epsilon(1e-14));
  for (std::size_t k : {2, 5, 40}) {
    CHECK(msm::expected_degree_count(2 * k, 1000, 0.5) / msm::expected_degree_count(k, 1000, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
  }
  CHECK_THROWS_AS(msm::expected_degree_count(1, 1000, 0.5), std::domain_error);
}

TEST_CASE("predicted average clustering") {
  using msm::LowDegreeConvention;
  CHECK(msm::predicted_average_clustering(0.3, LowDegreeConvention::Exclude) == 1.0);
  CHECK(msm::predicted_average_clustering(0.3, LowDegreeConvention::Zero) == doctest::Approx(0.7));
  CHECK(msm::predicted_average_clustering(0.0, LowDegreeConvention::Zero) == 1.0);
  CHECK(msm::predicted_average_clustering(0.0, LowDegreeConvention::Exclude) == 1.0);
}

TEST_CASE("grids") {
  const auto g = msm::log_grid(1e-2, 1e2, 5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 1e-2);
  CHECK(g.back() == 1e2);
  CHECK(g[2] == doctest::Approx(1.0).epsilon(1e-14));
  const auto c = msm::curve_grid(1, 10000, 5.0, 60);
  REQUIRE(c.size() == 60);
  CHECK(c.front() == doctest::Approx(0.02).epsilon(1e-14));
  CHECK(c.back() == doctest::Approx(5.0).epsilon(1e-14));
  for (std::size_t i = 1; i < c.size(); ++i) CHECK(c[i] > c[i - 1]);
  CHECK(msm::curve_grid(7, 100, 5.0, 10).front() == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("curve evaluation") {
  const std::vector<double> grid{0.01, 0.5, 1.0, 2.0, 40.0};
  const auto curve = msm::annealed_curve(grid, 0.5, 1e-6);
  CHECK(curve.alpha == 0.5);
  REQUIRE(curve.points.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& p = curve.points[i];
    CHECK(p.a == grid[i]);
    CHECK(p.c_bar <= 1.0 + p.quad_error);
    CHECK(p.c_hub.has_value() == (p.a > 1.0));
    CHECK(p.c_bar == doctest::Approx(msm::annealed_value(p.a, 0.5, 1e-6).value).epsilon(1e-12));
    if (i > 0) CHECK(p.c_bar < curve.points[i - 1].c_bar);
  }
  const std::vector<double> bad{1.0, 0.5};
  CHECK_THROWS_AS(msm::annealed_curve(bad, 0.5, 1e-6), std::invalid_argument);
  const std::vector<double> neg{-1.0, 0.5};
  CHECK_THROWS_AS(msm::annealed_curve(neg, 0.5, 1e-6), std::invalid_argument);
}

TEST_CASE("extreme tail exponents") {
  for (double alpha : {0.001, 0.01, 0.05, 0.95, 0.99, 0.999}) {
    for (double a : {1e-100, 1e-4, 0.05, 0.5, 1.0, 2.0, 10.0, 1e3, 1e100}) {
      CAPTURE(alpha);
      CAPTURE(a);
      const auto e = msm::annealed_value(a, alpha, 1e-10);
      CHECK(std::isfinite(e.value));
      CHECK(e.value <= 1.0 + e.abs_error);
      CHECK(e.value >= -e.abs_error);
    }
    for (double a : {0.5, 1.0, 2.0}) {
      const auto q = msm::single_integral_oracle(a, alpha, 1e-8);
      CHECK(std::abs(q.quadrature.value - q.closed_form) <= 1e-8);
    }
  }
  // 1-D oracle values at alpha = 0.95 (mpmath, 40 digits)
  CHECK(std::abs(msm::annealed_value(0.05, 0.95, 1e-10).value - 0.161289871035) < 1e-10);
  CHECK(std::abs(msm::annealed_value(1.0, 0.95, 1e-10).value - 0.06422939151687) < 1e-10);
}
