#include "msm/degree_fractions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "msm/special_functions.hpp"

namespace msm {
namespace {

// Sums with one or two weights left out, built from prefix and suffix sums of
// the descending order (no total-minus-term cancellation).
class LeaveOutSums {
 public:
  explicit LeaveOutSums(std::span<const double> w) : rank_(w.size()) {
    const std::size_t n = w.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });
    sorted_.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
      sorted_[r] = w[order[r]];
      rank_[order[r]] = r;
    }
    prefix_.assign(n + 1, 0.0);
    for (std::size_t r = 0; r < n; ++r) prefix_[r + 1] = prefix_[r] + sorted_[r];
    suffix_.assign(n + 1, 0.0);
    for (std::size_t r = n; r-- > 0;) suffix_[r] = suffix_[r + 1] + sorted_[r];
  }

  double without(std::size_t i) const {
    const std::size_t r = rank_[i];
    return prefix_[r] + suffix_[r + 1];
  }

  double without(std::size_t i, std::size_t k) const {
    std::size_t r1 = rank_[i];
    std::size_t r2 = rank_[k];
    if (r1 > r2) std::swap(r1, r2);
    return prefix_[r1] + (suffix_[r1 + 1] - suffix_[r2]) + suffix_[r2 + 1];
  }

 private:
  std::vector<std::size_t> rank_;
  std::vector<double> sorted_;
  std::vector<double> prefix_;
  std::vector<double> suffix_;
};

double laplace_pareto(double x, double alpha) {
  return alpha * std::pow(x, alpha) * upper_incomplete_gamma(-alpha, x);
}

}  // namespace

DegreeFractions empirical_fractions(const Graph& graph) {
  DegreeFractions out;
  out.method = FractionMethod::Empirical;
  const std::size_t n = graph.num_nodes();
  if (n == 0) return out;
  std::size_t zero = 0;
  std::size_t one = 0;
  for (NodeId v = 0; v < n; ++v) {
    const std::size_t d = graph.degree(v);
    zero += d == 0;
    one += d == 1;
  }
  out.r0 = static_cast<double>(zero) / static_cast<double>(n);
  out.r1 = static_cast<double>(one) / static_cast<double>(n);
  out.r01 = static_cast<double>(zero + one) / static_cast<double>(n);
  return out;
}

double exact_conditional_r0(std::span<const double> weights, double delta) {
  const std::size_t n = weights.size();
  if (n < 2) throw std::domain_error("exact_conditional_r0: requires n >= 2");
  const LeaveOutSums sums(weights);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += std::exp(-delta * weights[i] * sums.without(i));
  }
  return total / static_cast<double>(n);
}

double exact_conditional_r1(std::span<const double> weights, double delta) {
  const std::size_t n = weights.size();
  if (n < 2) throw std::domain_error("exact_conditional_r1: requires n >= 2");
  const LeaveOutSums sums(weights);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double wi = weights[i];
    const double others = sums.without(i);
    const double rate = delta * wi;
    double row = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i) continue;
      const double wk = weights[k];
      const double rest = wk <= 0.5 * others ? others - wk : sums.without(i, k);
      const double exponent = rate * rest;
      if (exponent > 745.0) continue;
      row += -std::expm1(-rate * wk) * std::exp(-exponent);
    }
    total += row;
  }
  return total / static_cast<double>(n);
}

double exact_conditional_r0(const WeightVector& weights) {
  return exact_conditional_r0(weights.values, delta_n(weights.size(), weights.alpha));
}

double exact_conditional_r1(const WeightVector& weights) {
  return exact_conditional_r1(weights.values, delta_n(weights.size(), weights.alpha));
}

DegreeFractions exact_conditional_fractions(const WeightVector& weights) {
  DegreeFractions out;
  out.method = FractionMethod::ExactConditional;
  out.r0 = exact_conditional_r0(weights);
  out.r1 = exact_conditional_r1(weights);
  out.r01 = out.r0 + out.r1;
  return out;
}

double approx_r0(const RescaledWeights& rescaled, double alpha) {
  if (!(rescaled.s_n > 0.0)) throw std::domain_error("approx_r0: S_n must be positive");
  return laplace_pareto(rescaled.s_n, alpha);
}

R1Approximation approx_r1(const RescaledWeights& rescaled, double alpha) {
  const std::size_t n = rescaled.y.size();
  if (n < 2) throw std::domain_error("approx_r1: requires at least two weights");
  if (!(rescaled.s_n > 0.0)) throw std::domain_error("approx_r1: S_n must be positive");
  const LeaveOutSums sums(rescaled.y);
  const double base = laplace_pareto(rescaled.s_n, alpha);
  R1Approximation out;
  for (std::size_t k = 0; k < n; ++k) {
    const double rest = sums.without(k);
    if (!(rest > 0.0)) {
      ++out.skipped_terms;
      continue;
    }
    out.value += laplace_pareto(rest, alpha) - base;
  }
  return out;
}

GammaApproxFractions approx_fractions(const RescaledWeights& rescaled, double alpha) {
  GammaApproxFractions out;
  out.fractions.method = FractionMethod::GammaApprox;
  out.fractions.r0 = approx_r0(rescaled, alpha);
  const R1Approximation r1 = approx_r1(rescaled, alpha);
  out.fractions.r1 = r1.value;
  out.skipped_terms = r1.skipped_terms;
  const double r01 = out.fractions.r0 + out.fractions.r1;
  out.fractions.r01 = std::clamp(r01, 0.0, 1.0);
  out.clamped = out.fractions.r01 != r01;
  return out;
}

SampleStats self_averaging_stats(std::span<const double> samples) {
  if (samples.size() < 2) {
    throw std::domain_error("self_averaging_stats: requires at least two samples");
  }
  SampleStats out;
  out.count = samples.size();
  const double n = static_cast<double>(samples.size());
  out.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : samples) ss += (x - out.mean) * (x - out.mean);
  out.std = std::sqrt(ss / (n - 1.0));
  return out;
}

}  // namespace msm
