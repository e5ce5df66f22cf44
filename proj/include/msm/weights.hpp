#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "msm/rng.hpp"

namespace msm {

enum class WeightSource { Pareto, Stable };

std::string_view to_string(WeightSource source);
WeightSource parse_weight_source(std::string_view text);

// Node fitnesses w_1..w_n, i.i.d. with tail exponent alpha in (0, 1).
struct WeightVector {
  std::vector<double> values;
  double alpha = 0.5;
  WeightSource source = WeightSource::Pareto;

  std::size_t size() const noexcept { return values.size(); }
};

// Total rescaled weight S_n = delta_n * sum_j w_j together with the rescaled
// weights y_k = delta_n * w_(k) ordered from largest to smallest.
struct RescaledWeights {
  double s_n = 0.0;
  std::vector<double> y;
};

enum class StableParametrization { Zero, One };

// One-sided alpha-stable law S(alpha, 1, gamma, delta) tail-matched to the unit
// Pareto. Sampling works in the one-parametrization, where the support is
// [delta_one, inf); delta_zero is the equivalent location in the
// zero-parametrization and is kept for reporting.
struct StableParams {
  double alpha = 0.5;
  double beta = 1.0;
  double gamma_scale = 1.0;
  double delta_one = 0.0;
  double delta_zero = 0.0;
  StableParametrization parametrization = StableParametrization::One;

  double support_infimum() const;
};

void validate_alpha(double alpha, std::string_view where);

// Inverse transform of a uniform draw: w = u^(-1/alpha).
double pareto_from_uniform(double u, double alpha);

WeightVector sample_pareto(double alpha, std::size_t n, RngStream stream);

StableParams stable_scale(double alpha);

// Chambers-Mallows-Stuck draw of a standard S(alpha, 1, 1, 0; 1) variable from
// an angle uniform u_angle in (0,1) and an exponential-generating uniform
// u_exp in (0,1).
double standard_stable_from_uniforms(double u_angle, double u_exp,
                                     double alpha);

WeightVector sample_one_sided_stable(const StableParams& params, std::size_t n,
                                     RngStream stream);

WeightVector sample_weights(WeightSource source, double alpha, std::size_t n,
                            RngStream stream);

RescaledWeights rescaled_quantities(const WeightVector& weights);

}  // namespace msm
