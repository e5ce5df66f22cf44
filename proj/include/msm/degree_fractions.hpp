#pragma once

#include <cstddef>
#include <span>

#include "msm/graph.hpp"
#include "msm/weights.hpp"

namespace msm {

enum class FractionMethod { Empirical, ExactConditional, GammaApprox };

// Fractions of nodes with degree 0 and 1; r01 = r0 + r1.
struct DegreeFractions {
  double r0 = 0.0;
  double r1 = 0.0;
  double r01 = 0.0;
  FractionMethod method = FractionMethod::Empirical;
};

DegreeFractions empirical_fractions(const Graph& graph);

// Expected fractions given the weights, i.e. averaged over graph draws only.
// The delta overloads take an explicit edge scaling; the WeightVector
// overloads use delta_n(n, alpha).
double exact_conditional_r0(std::span<const double> weights, double delta);
double exact_conditional_r1(std::span<const double> weights, double delta);
double exact_conditional_r0(const WeightVector& weights);
double exact_conditional_r1(const WeightVector& weights);
DegreeFractions exact_conditional_fractions(const WeightVector& weights);

// r0 ~ alpha S_n^alpha Gamma(-alpha, S_n).
double approx_r0(const RescaledWeights& rescaled, double alpha);

struct R1Approximation {
  double value = 0.0;
  std::size_t skipped_terms = 0;  // k with S_n - y_k <= 0
};

// r1 ~ alpha sum_k [(S_n - y_k)^alpha Gamma(-alpha, S_n - y_k)
//                   - S_n^alpha Gamma(-alpha, S_n)].
R1Approximation approx_r1(const RescaledWeights& rescaled, double alpha);

struct GammaApproxFractions {
  DegreeFractions fractions;
  std::size_t skipped_terms = 0;
  bool clamped = false;  // r01 was pulled back into [0, 1]
};

GammaApproxFractions approx_fractions(const RescaledWeights& rescaled, double alpha);

struct SampleStats {
  double mean = 0.0;
  double std = 0.0;  // unbiased (n - 1) normalization
  std::size_t count = 0;
};

SampleStats self_averaging_stats(std::span<const double> samples);

}  // namespace msm
