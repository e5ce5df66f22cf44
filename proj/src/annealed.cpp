#include "msm/annealed.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "msm/special_functions.hpp"
#include "msm/weights.hpp"

namespace msm {
namespace {

enum class Kernel { Full, Complement };

void validate_tol(double tol, const char* where) {
  if (!(tol >= 1e-10 && tol <= 1e-3)) {
    throw std::domain_error(std::string(where) + ": tol must lie in [1e-10, 1e-3]");
  }
}

void validate_reduced_degree(double a, const char* where) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw std::domain_error(std::string(where) + ": a must be positive");
  }
}

double g(double x) { return -std::expm1(-x); }

// g(e^t) e^(-alpha u) without forming e^t or e^(-alpha u) on their own
double damped_g(double t, double alpha, double u) {
  const double log_g = t < -40.0 ? t : std::log(g(std::exp(t)));
  return std::exp(log_g - alpha * u);
}

// g(e^(t - c)) switches over within a few units of c; a lone breakpoint at c
// leaves wide panels whose Kronrod estimate can miss the switch.
std::vector<double> around(std::initializer_list<double> centers) {
  std::vector<double> out;
  for (double c : centers) {
    for (double d : {0.0, 1.0, 3.0, 10.0, 30.0}) {
      out.push_back(c - d);
      if (d > 0.0) out.push_back(c + d);
    }
  }
  return out;
}

double log_b_of(double a, double alpha) { return std::log(a) / alpha + std::log(tau_alpha(alpha)); }

// (alpha^2/a^2) II K(u, v) du dv over the square [lo, hi]^2 in log variables.
// Outside the square each of the four half-planes contributes at most tol/40
// to the result: with g <= 1 and int g(b e^u) e^(-alpha u) du = a/alpha,
//   {v > hi}: e^(-alpha hi) / a,
//   {v < lo}: alpha b e^((1-alpha) lo) / (a (1-alpha))   (using g(b y) <= b y).
Estimate double_integral(double a, double alpha, double tol, Kernel kernel) {
  const double prefactor = alpha * alpha / (a * a);
  const double log_b = log_b_of(a, alpha);
  const double tail_share = tol / 40.0;
  const double hi = -std::log(a * tail_share) / alpha;
  const double lo = (std::log(tail_share * a * (1.0 - alpha) / alpha) - log_b) / (1.0 - alpha);
  const double tail_bound = 4.0 * tail_share;
  if (!(hi > lo)) return {kernel == Kernel::Full ? 0.0 : 1.0, tail_bound};

  // An inner error eps is weighted by the outer factor, whose integral is at
  // most a/alpha, so it reaches the result scaled by alpha/a.
  const double inner_tol = 0.1 * tol * a / alpha;
  const double outer_tol = 0.7 * tol / prefactor;

  double worst_inner_error = 0.0;
  bool inner_converged = true;
  auto outer = [&](double u) {
    const double weight = damped_g(log_b + u, alpha, u);
    if (weight == 0.0) return 0.0;
    auto inner = [&](double v) {
      const double xy = std::exp(u + v);
      const double link = kernel == Kernel::Full ? g(xy) : std::exp(-xy);
      return damped_g(log_b + v, alpha, v) * link;
    };
    const QuadratureResult r = integrate_adaptive(inner, lo, hi, inner_tol, around({-log_b, -u}));
    worst_inner_error = std::max(worst_inner_error, r.abs_error);
    inner_converged = inner_converged && r.converged;
    return weight * r.value;
  };
  const QuadratureResult r = integrate_adaptive(outer, lo, hi, outer_tol, around({-log_b}));

  Estimate est;
  est.value = prefactor * r.value;
  est.abs_error = prefactor * r.abs_error + (alpha / a) * worst_inner_error + tail_bound;
  if (kernel == Kernel::Complement) est.value = 1.0 - est.value;
  if (!r.converged || !inner_converged || est.abs_error > tol) {
    std::ostringstream msg;
    msg << "annealed clustering quadrature did not reach tol " << tol << " at a = " << a
        << ", alpha = " << alpha;
    throw QuadratureError(msg.str(), est);
  }
  return est;
}

}  // namespace

Estimate annealed_clustering(double a, double alpha, double tol) {
  validate_reduced_degree(a, "annealed_clustering");
  validate_alpha(alpha, "annealed_clustering");
  validate_tol(tol, "annealed_clustering");
  return double_integral(a, alpha, tol, Kernel::Full);
}

Estimate complementary_form(double a, double alpha, double tol) {
  validate_reduced_degree(a, "complementary_form");
  validate_alpha(alpha, "complementary_form");
  validate_tol(tol, "complementary_form");
  return double_integral(a, alpha, tol, Kernel::Complement);
}

Estimate annealed_value(double a, double alpha, double tol) {
  if (a < kComplementaryThreshold) return complementary_form(a, alpha, tol);
  return annealed_clustering(a, alpha, tol);
}

double hub_asymptotic(double a, double alpha) {
  validate_alpha(alpha, "hub_asymptotic");
  if (!(a > 1.0)) throw std::domain_error("hub_asymptotic: requires a > 1");
  return 2.0 * gamma(1.0 - alpha) * std::log(a) / (a * a);
}

SingleIntegralCheck single_integral_oracle(double a, double alpha, double tol) {
  validate_reduced_degree(a, "single_integral_oracle");
  validate_alpha(alpha, "single_integral_oracle");
  if (!(tol > 0.0)) throw std::domain_error("single_integral_oracle: tol must be positive");
  const double log_b = log_b_of(a, alpha);
  // Tails: {u > hi} <= e^(-alpha hi)/alpha, {u < lo} <= b e^((1-alpha) lo)/(1-alpha).
  const double tail_share = tol / 20.0;
  const double hi = -std::log(alpha * tail_share) / alpha;
  const double lo = (std::log(tail_share * (1.0 - alpha)) - log_b) / (1.0 - alpha);
  auto f = [&](double u) { return damped_g(log_b + u, alpha, u); };
  const QuadratureResult r = integrate_adaptive(f, lo, hi, 0.9 * tol, around({-log_b}));
  SingleIntegralCheck out;
  out.quadrature = {r.value, r.abs_error + 2.0 * tail_share};
  out.closed_form = a / alpha;
  if (!r.converged) throw QuadratureError("single integral did not converge", out.quadrature);
  return out;
}

double pareto_laplace(double a, double alpha) {
  validate_alpha(alpha, "pareto_laplace");
  if (!(a > 0.0)) throw std::domain_error("pareto_laplace: a must be positive");
  return alpha * std::pow(a, alpha) * upper_incomplete_gamma(-alpha, a);
}

double expected_degree_count(std::size_t k, std::size_t n, double alpha) {
  validate_alpha(alpha, "expected_degree_count");
  if (k < 2) throw std::domain_error("expected_degree_count: requires k >= 2");
  const double kk = static_cast<double>(k);
  return static_cast<double>(n) * alpha * gamma(1.0 - alpha) / (kk * kk);
}

double predicted_average_clustering(double r01, LowDegreeConvention convention) {
  if (!(r01 >= 0.0 && r01 <= 1.0)) {
    throw std::domain_error("predicted_average_clustering: r01 must lie in [0, 1]");
  }
  return convention == LowDegreeConvention::Exclude ? 1.0 : 1.0 - r01;
}

AnnealedCurve annealed_curve(std::span<const double> grid, double alpha, double tol) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw std::invalid_argument("annealed_curve: grid must be positive and strictly increasing");
    }
  }
  AnnealedCurve curve;
  curve.alpha = alpha;
  curve.points.reserve(grid.size());
  for (double a : grid) {
    const Estimate e = annealed_value(a, alpha, tol);
    CurvePoint p;
    p.a = a;
    p.c_bar = e.value;
    p.quad_error = e.abs_error;
    if (a > 1.0) p.c_hub = hub_asymptotic(a, alpha);
    curve.points.push_back(p);
  }
  return curve;
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  if (!(lo > 0.0) || !(hi >= lo) || points == 0) {
    throw std::invalid_argument("log_grid: need 0 < lo <= hi and points >= 1");
  }
  if (points == 1 || hi == lo) return {lo};
  std::vector<double> out(points);
  const double step = std::log(hi / lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    out[i] = lo * std::exp(step * static_cast<double>(i));
  }
  out.back() = hi;
  return out;
}

std::vector<double> curve_grid(std::size_t k_min, std::size_t n, double a_max,
                               std::size_t points) {
  const double a_min = reduced_degree(std::max<std::size_t>(2, k_min), n);
  return log_grid(a_min, std::max(a_min, a_max), points);
}

}  // namespace msm
