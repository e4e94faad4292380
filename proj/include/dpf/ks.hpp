#ifndef DPF_KS_HPP_
#define DPF_KS_HPP_

#include <cstddef>
#include <functional>
#include <span>

namespace dpf {

/// Asymptotic Kolmogorov null quantiles: P(sqrt(N) D > c) at 99% and 99.9%.
inline constexpr double kKsCoef99 = 1.63;
inline constexpr double kKsCoef999 = 1.95;

/// Two-sample statistic sup |F_x - F_y|, with ties handled exactly.
double ks_two_sample(std::span<const double> xs, std::span<const double> ys);

/// One-sample statistic sup |F_x - cdf| for a continuous cdf.
double ks_vs_cdf(std::span<const double> xs, const std::function<double(double)>& cdf);

/// coef * sqrt((n1 + n2) / (n1 n2)).
double ks_threshold_two_sample(std::size_t n1, std::size_t n2, double coef = kKsCoef999);
/// coef / sqrt(n).
double ks_threshold_one_sample(std::size_t n, double coef = kKsCoef999);

}  // namespace dpf

#endif  // DPF_KS_HPP_
