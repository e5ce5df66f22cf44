#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace msm {

struct Estimate {
  double value = 0.0;
  double abs_error = 0.0;
};

// Thrown when an integral cannot be brought under the requested tolerance.
// The best available estimate travels with the exception.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, Estimate best)
      : std::runtime_error(what), best_(best) {}
  const Estimate& best_estimate() const noexcept { return best_; }

 private:
  Estimate best_;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

namespace detail {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
inline constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208814394813, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7, 9.
inline constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double lo = 0.0;
  double hi = 0.0;
  double value = 0.0;
  double error = 0.0;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <typename F>
Panel kronrod_panel(F& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double f_center = f(center);
  double kronrod = f_center * kKronrodWeights[10];
  double gauss = 0.0;
  double abs_sum = std::abs(kronrod);
  std::array<double, 10> left{};
  std::array<double, 10> right{};
  for (std::size_t i = 0; i < 10; ++i) {
    const double dx = half * kKronrodNodes[i];
    left[i] = f(center - dx);
    right[i] = f(center + dx);
    const double pair = left[i] + right[i];
    kronrod += kKronrodWeights[i] * pair;
    abs_sum += kKronrodWeights[i] * (std::abs(left[i]) + std::abs(right[i]));
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  const double mean = 0.5 * kronrod;
  double asc = kKronrodWeights[10] * std::abs(f_center - mean);
  for (std::size_t i = 0; i < 10; ++i) {
    asc += kKronrodWeights[i] *
           (std::abs(left[i] - mean) + std::abs(right[i] - mean));
  }
  asc *= half;
  abs_sum *= half;

  // QUADPACK error heuristic.
  double err = std::abs((kronrod - gauss) * half);
  if (asc != 0.0 && err != 0.0) {
    err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (abs_sum > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(50.0 * eps * abs_sum, err);
  }
  return {lo, hi, kronrod * half, err};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod quadrature on a finite interval with an
// absolute error target. The interval is first split at `breakpoints` (those
// strictly inside (lo, hi)); the panel with the largest error estimate is then
// bisected until the summed estimate is below abs_tol or the panel budget is
// spent. Non-convergence is reported through `converged`, not thrown.
template <typename F>
QuadratureResult integrate_adaptive(F&& f, double lo, double hi, double abs_tol,
                                    std::span<const double> breakpoints = {},
                                    std::size_t max_panels = 4000) {
  QuadratureResult out;
  if (!(hi > lo)) {
    out.converged = true;
    return out;
  }
  std::vector<double> cuts{lo};
  std::vector<double> inner(breakpoints.begin(), breakpoints.end());
  std::sort(inner.begin(), inner.end());
  for (double b : inner) {
    if (b > cuts.back() && b < hi) cuts.push_back(b);
  }
  cuts.push_back(hi);

  std::priority_queue<detail::Panel> panels;
  double total = 0.0;
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    detail::Panel p = detail::kronrod_panel(f, cuts[i], cuts[i + 1]);
    out.evaluations += 21;
    total += p.value;
    total_error += p.error;
    panels.push(p);
  }

  while (total_error > abs_tol && panels.size() < max_panels) {
    const detail::Panel worst = panels.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) break;
    panels.pop();
    const detail::Panel a = detail::kronrod_panel(f, worst.lo, mid);
    const detail::Panel b = detail::kronrod_panel(f, mid, worst.hi);
    out.evaluations += 42;
    total += a.value + b.value - worst.value;
    total_error += a.error + b.error - worst.error;
    panels.push(a);
    panels.push(b);
  }

  // Re-sum from the panels to shed drift accumulated by the running updates.
  total = 0.0;
  total_error = 0.0;
  while (!panels.empty()) {
    total += panels.top().value;
    total_error += panels.top().error;
    panels.pop();
  }
  out.value = total;
  out.abs_error = total_error;
  out.converged = total_error <= abs_tol;
  return out;
}

template <typename F>
QuadratureResult integrate_adaptive(F&& f, double lo, double hi, double abs_tol,
                                    std::initializer_list<double> breakpoints,
                                    std::size_t max_panels = 4000) {
  return integrate_adaptive(std::forward<F>(f), lo, hi, abs_tol,
                            std::span<const double>(breakpoints.begin(),
                                                    breakpoints.size()),
                            max_panels);
}

}  // namespace msm
