#include "msm/weights.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

#include "msm/graph.hpp"

namespace msm {

std::string_view to_string(WeightSource source) {
  return source == WeightSource::Pareto ? "pareto" : "stable";
}

WeightSource parse_weight_source(std::string_view text) {
  if (text == "pareto") return WeightSource::Pareto;
  if (text == "stable") return WeightSource::Stable;
  throw std::invalid_argument("unknown weight source: " + std::string(text));
}

void validate_alpha(double alpha, std::string_view where) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error(std::string(where) +
                            ": alpha must lie in (0, 1), got " +
                            std::to_string(alpha));
  }
}

double StableParams::support_infimum() const {
  if (parametrization == StableParametrization::One) return delta_one;
  return delta_zero - beta * gamma_scale * std::tan(std::numbers::pi * alpha / 2);
}

double pareto_from_uniform(double u, double alpha) {
  return std::pow(u, -1.0 / alpha);
}

WeightVector sample_pareto(double alpha, std::size_t n, RngStream stream) {
  validate_alpha(alpha, "sample_pareto");
  WeightVector out;
  out.alpha = alpha;
  out.source = WeightSource::Pareto;
  out.values.resize(n);
  for (double& w : out.values) w = pareto_from_uniform(stream.next_uniform(), alpha);
  return out;
}

StableParams stable_scale(double alpha) {
  validate_alpha(alpha, "stable_scale");
  const double half_angle = std::numbers::pi * alpha / 2;
  StableParams p;
  p.alpha = alpha;
  p.beta = 1.0;
  p.gamma_scale = std::pow(
      std::numbers::pi / (2.0 * std::tgamma(alpha) * std::sin(half_angle)),
      1.0 / alpha);
  p.delta_one = 0.0;
  p.delta_zero = p.gamma_scale * std::tan(half_angle);
  p.parametrization = StableParametrization::One;
  return p;
}

double standard_stable_from_uniforms(double u_angle, double u_exp,
                                     double alpha) {
  // beta = 1: the skew offset alpha*B equals pi*alpha/2 and the CMS scale
  // factor reduces to cos(pi*alpha/2)^(-1/alpha).
  const double half_pi = std::numbers::pi / 2;
  const double v = std::numbers::pi * (u_angle - 0.5);
  const double e = -std::log(u_exp);
  const double shifted = alpha * v + alpha * half_pi;
  const double scale = std::pow(std::cos(alpha * half_pi), -1.0 / alpha);
  const double head = std::sin(shifted) / std::pow(std::cos(v), 1.0 / alpha);
  const double tail = std::pow(std::cos(v - shifted) / e, (1.0 - alpha) / alpha);
  return scale * head * tail;
}

WeightVector sample_one_sided_stable(const StableParams& params, std::size_t n,
                                     RngStream stream) {
  validate_alpha(params.alpha, "sample_one_sided_stable");
  if (params.beta != 1.0 || !(params.gamma_scale > 0.0)) {
    throw std::domain_error(
        "sample_one_sided_stable: requires beta = 1 and a positive scale");
  }
  WeightVector out;
  out.alpha = params.alpha;
  out.source = WeightSource::Stable;
  out.values.resize(n);
  for (double& w : out.values) {
    const double u_angle = stream.next_uniform();
    const double u_exp = stream.next_uniform();
    w = params.delta_one + params.gamma_scale * standard_stable_from_uniforms(
                                                    u_angle, u_exp, params.alpha);
  }
  return out;
}

WeightVector sample_weights(WeightSource source, double alpha, std::size_t n,
                            RngStream stream) {
  if (source == WeightSource::Pareto) return sample_pareto(alpha, n, stream);
  return sample_one_sided_stable(stable_scale(alpha), n, stream);
}

RescaledWeights rescaled_quantities(const WeightVector& weights) {
  if (weights.values.empty()) {
    throw std::invalid_argument("rescaled_quantities: empty weight vector");
  }
  const double delta = delta_n(weights.size(), weights.alpha);
  RescaledWeights out;
  out.y.reserve(weights.size());
  for (double w : weights.values) out.y.push_back(delta * w);
  std::sort(out.y.begin(), out.y.end(), std::greater<>());
  // smallest first
  double sum = 0.0;
  for (auto it = out.y.rbegin(); it != out.y.rend(); ++it) sum += *it;
  out.s_n = sum;
  return out;
}

}  // namespace msm
