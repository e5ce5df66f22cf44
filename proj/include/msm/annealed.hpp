#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "msm/clustering.hpp"
#include "msm/quadrature.hpp"

namespace msm {

// Limiting annealed clustering function at reduced degree a,
//
//   Cbar(a) = (alpha^2 / a^2) * II g(b x) g(b y) g(x y) (x y)^(-1-alpha) dx dy,
//
// with g(x) = 1 - e^(-x) and b = a^(1/alpha) * tau_alpha, integrated directly
// by nested adaptive quadrature in u = log x, v = log y. The error estimate
// covers the outer rule, the propagated inner errors and the truncation of the
// plane to a finite square. Throws QuadratureError (carrying the best
// estimate) if the total cannot be brought under `tol`.
Estimate annealed_clustering(double a, double alpha, double tol);

// Same function through Cbar(a) = 1 - Cbar_1(a), where Cbar_1 replaces g(xy)
// by e^(-xy). Accurate where Cbar is close to 1.
Estimate complementary_form(double a, double alpha, double tol);

// Route used for reporting: complementary_form below this reduced degree,
// annealed_clustering above it.
inline constexpr double kComplementaryThreshold = 0.1;
Estimate annealed_value(double a, double alpha, double tol);

// 2 Gamma(1 - alpha) log(a) / a^2, the large-a decay. Requires a > 1.
double hub_asymptotic(double a, double alpha);

struct SingleIntegralCheck {
  Estimate quadrature;
  double closed_form = 0.0;  // a / alpha
};

// int_0^inf (1 - e^(-x a^(1/alpha) tau_alpha)) x^(-1-alpha) dx by quadrature,
// alongside its closed form a / alpha.
SingleIntegralCheck single_integral_oracle(double a, double alpha, double tol);

// E[e^(-a W)] for a unit Pareto W: alpha a^alpha Gamma(-alpha, a).
double pareto_laplace(double a, double alpha);

// n alpha Gamma(1 - alpha) / k^2, the expected number of degree-k nodes.
double expected_degree_count(std::size_t k, std::size_t n, double alpha);

// Limit of the node-averaged clustering: 1 when low-degree nodes are left out,
// 1 - r01 when they count as zero.
double predicted_average_clustering(double r01, LowDegreeConvention convention);

struct CurvePoint {
  double a = 0.0;
  double c_bar = 0.0;
  std::optional<double> c_hub;  // only defined for a > 1
  double quad_error = 0.0;
};

struct AnnealedCurve {
  double alpha = 0.5;
  std::vector<CurvePoint> points;
};

// `grid` must be strictly increasing and positive.
AnnealedCurve annealed_curve(std::span<const double> grid, double alpha,
                             double tol);

// Log-spaced reduced degrees from max(2, k_min)/sqrt(n) up to a_max.
std::vector<double> curve_grid(std::size_t k_min, std::size_t n, double a_max,
                               std::size_t points = 60);
std::vector<double> log_grid(double lo, double hi, std::size_t points);

}  // namespace msm
