#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace testing {

// int_lo^inf f via exp-sinh.
inline double integrate_to_infinity(const std::function<double(double)>& f, double lo) {
  boost::math::quadrature::exp_sinh<double> rule;
  return rule.integrate(f, lo, std::numeric_limits<double>::infinity(), 1e-14);
}

inline double integrate_finite(const std::function<double(double)>& f, double lo, double hi) {
  boost::math::quadrature::tanh_sinh<double> rule;
  return rule.integrate(f, lo, hi, 1e-14);
}

// Kolmogorov-Smirnov distance of a sorted sample to a continuous CDF.
inline double ks_one_sample(const std::vector<double>& sorted,
                            const std::function<double(double)>& cdf) {
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

inline double ks_two_sample(const std::vector<double>& a, const std::vector<double>& b) {
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

// Asymptotic 1% critical values.
inline double ks_critical_1pct(std::size_t n) { return 1.628 / std::sqrt(static_cast<double>(n)); }
inline double ks_critical_1pct(std::size_t n, std::size_t m) {
  const double a = static_cast<double>(n);
  const double b = static_cast<double>(m);
  return 1.628 * std::sqrt((a + b) / (a * b));
}

// Dense adjacency matrix for cubic reference computations.
struct Dense {
  std::size_t n = 0;
  std::vector<char> a;
  explicit Dense(std::size_t size) : n(size), a(size * size, 0) {}
  bool operator()(std::size_t i, std::size_t j) const { return a[i * n + j] != 0; }
  void set(std::size_t i, std::size_t j) {
    a[i * n + j] = 1;
    a[j * n + i] = 1;
  }
  std::size_t degree(std::size_t v) const {
    std::size_t d = 0;
    for (std::size_t j = 0; j < n; ++j) d += (*this)(v, j);
    return d;
  }
  // (1/2) sum_{i != v} sum_{j != v, i} A_vi A_ij A_jv
  double triangles(std::size_t v) const {
    double t = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == v || j == v || i == j) continue;
        t += (*this)(v, i) * (*this)(i, j) * (*this)(j, v);
      }
    }
    return t / 2.0;
  }
};

}  // namespace testing
