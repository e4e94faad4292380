#ifndef DPF_SPECIAL_HPP_
#define DPF_SPECIAL_HPP_

namespace dpf {

/// log Γ(x) for x > 0.
double log_gamma(double x);

/// log B(a, b) = log Γ(a) + log Γ(b) - log Γ(a + b).
double log_beta(double a, double b);

/// Regularized incomplete beta I_x(a, b), 0 <= x <= 1. This is the Beta(a, b) CDF.
double reg_inc_beta(double a, double b, double x);

/// Regularized lower incomplete gamma P(a, x), x >= 0. This is the Gamma(a, 1) CDF.
double reg_inc_gamma(double a, double x);

}  // namespace dpf

#endif  // DPF_SPECIAL_HPP_
