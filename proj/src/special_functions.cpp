#include "msm/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace msm {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxIterations = 10000;

// x^s e^(-x), evaluated in the log domain so large x underflows cleanly.
double power_times_exp(double s, double x) {
  return std::exp(s * std::log(x) - x);
}

// Gamma(s) - gamma(s, x) with the lower function from its power series.
SpecialValue upper_by_series(double s, double x) {
  double term = 1.0 / s;
  double sum = term;
  int n = 1;
  for (; n < kMaxIterations; ++n) {
    term *= x / (s + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  const double ratio = x / (s + n + 1);
  const double tail = ratio < 1.0 ? std::abs(term) * ratio / (1.0 - ratio)
                                  : std::abs(term);
  const double prefactor = power_times_exp(s, x);
  const double full = std::tgamma(s);
  const double lower = prefactor * sum;
  SpecialValue out;
  out.value = full - lower;
  out.abs_error_estimate = prefactor * (tail + std::abs(sum) * kEps * n) +
                           4.0 * kEps * (std::abs(full) + std::abs(lower));
  return out;
}

// Modified Lentz evaluation of the Legendre continued fraction.
SpecialValue upper_by_continued_fraction(double s, double x) {
  double b = x + 1.0 - s;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  double last_delta = 0.0;
  int i = 1;
  for (; i < kMaxIterations; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    last_delta = std::abs(delta - 1.0);
    if (last_delta < kEps) break;
  }
  SpecialValue out;
  out.value = power_times_exp(s, x) * h;
  out.abs_error_estimate = std::abs(out.value) * (last_delta + 2.0 * kEps * i);
  return out;
}

SpecialValue upper_positive(double s, double x) {
  if (x < 1.5 || x < s + 1.0) return upper_by_series(s, x);
  return upper_by_continued_fraction(s, x);
}

}  // namespace

double gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error("gamma: argument must be positive, got " +
                            std::to_string(x));
  }
  return std::tgamma(x);
}

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error("log_gamma: argument must be positive, got " +
                            std::to_string(x));
  }
  return std::lgamma(x);
}

SpecialValue upper_incomplete_gamma_estimate(double s, double x) {
  if (!(s > -1.0) || s == 0.0 || !std::isfinite(s)) {
    throw std::domain_error(
        "upper_incomplete_gamma: s must lie in (-1, 0) or (0, inf), got " +
        std::to_string(s));
  }
  if (!(x > 0.0) || std::isnan(x)) {
    throw std::domain_error(
        "upper_incomplete_gamma: x must be positive, got " + std::to_string(x));
  }
  if (s > 0.0) return upper_positive(s, x);

  const SpecialValue shifted = upper_positive(s + 1.0, x);
  const double boundary = power_times_exp(s, x);
  SpecialValue out;
  out.value = std::max(0.0, (shifted.value - boundary) / s);
  out.abs_error_estimate =
      (shifted.abs_error_estimate + 2.0 * kEps * boundary) / std::abs(s) +
      2.0 * kEps * std::abs(out.value);
  return out;
}

double upper_incomplete_gamma(double s, double x) {
  return upper_incomplete_gamma_estimate(s, x).value;
}

double tau_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("tau_alpha: alpha must lie in (0, 1), got " +
                            std::to_string(alpha));
  }
  return std::pow(std::tgamma(1.0 - alpha), -1.0 / alpha);
}

}  // namespace msm
