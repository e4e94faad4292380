#ifndef DPF_QUADRATURE_HPP_
#define DPF_QUADRATURE_HPP_

#include <functional>
#include <memory>
#include <vector>

namespace dpf {

/// Nodes and weights for E[f(U)], U ~ Beta(a, b) on (0, 1). Weights are
/// normalized to sum to one, so the rule integrates against the Beta
/// probability density and any endpoint singularity is carried by the weight.
struct QuadratureRule {
  double a = 1.0;
  double b = 1.0;
  int order = 0;
  std::vector<double> nodes;
  std::vector<double> weights;

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

/// Gauss-Jacobi rule for the Beta(a, b) weight, exact for polynomials of
/// degree <= 2m - 1. Rules are memoized per (a, b, m); the returned pointer
/// stays valid for the lifetime of the process.
std::shared_ptr<const QuadratureRule> jacobi_rule(double a, double b, int m);

/// Gauss-Laguerre rule for the weight e^{-x} on (0, inf); weights sum to 1.
std::shared_ptr<const QuadratureRule> laguerre_rule(int m);

/// Globally adaptive 21-point Gauss-Kronrod integration on [lo, hi].
/// Throws std::runtime_error when the tolerance cannot be met.
double integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                          double abs_tol = 1e-14, double rel_tol = 1e-13,
                          int max_intervals = 4000);

}  // namespace dpf

#endif  // DPF_QUADRATURE_HPP_
