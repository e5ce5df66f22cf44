#pragma once

// Real special functions used by the annealed theory and the degree-fraction
// approximations. All functions are pure and throw std::domain_error outside
// their domain.

namespace msm {

struct SpecialValue {
  double value = 0.0;
  double abs_error_estimate = 0.0;
};

double gamma(double x);
double log_gamma(double x);

// Upper incomplete gamma Gamma(s, x) = int_x^inf t^(s-1) e^(-t) dt for
// s in (-1, 0) U (0, inf) and x > 0. Negative s goes through a single step of
// Gamma(s, x) = (Gamma(s+1, x) - x^s e^(-x)) / s.
double upper_incomplete_gamma(double s, double x);
SpecialValue upper_incomplete_gamma_estimate(double s, double x);

// Gamma(1 - alpha)^(-1/alpha), the weight scale at which a node's expected
// degree matches its target degree.
double tau_alpha(double alpha);

}  // namespace msm
