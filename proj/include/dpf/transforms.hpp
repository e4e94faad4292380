#ifndef DPF_TRANSFORMS_HPP_
#define DPF_TRANSFORMS_HPP_

#include "dpf/measures.hpp"

#include <span>
#include <vector>

namespace dpf {

/// Default Gauss-Jacobi order for integrals over u in (0, 1).
inline constexpr int kDefaultQuadOrder = 64;

/// Largest n accepted by the exact partition expansion.
inline constexpr int kMaxExactDepth = 10;

/// Throws std::domain_error unless 1 + z g(y) > 0 on the support of H.
void require_positive_kernel(const BaseMeasure& h, const Functional& g, double z);

/// ψ(z) = ∫ log(1 + z g(y)) θH(dy). Requires z >= 0 and 1 + z g > 0 on the support.
double psi(const ShapeMeasure& shape, const Functional& g, double z, QuadMethod method = QuadMethod::fixed);

/// exp(-ψ(z)): the Laplace functional E[exp(-z μ(g))] of the Gamma process.
double laplace_gamma(const ShapeMeasure& shape, const Functional& g, double z);

/// ∫ (1 + u z g(y))^{-e} H(dy).
double moment_integral(const BaseMeasure& h, const Functional& g, double z, double u, int e,
                       QuadMethod method = QuadMethod::fixed);

/// ∫_0^1 exp(-ψ_post(u z)) Beta(du | q, θ_post - q), where ψ_post uses the
/// full (posterior) shape θH + Σ e_j δ_{Y*_j}. Expanding ψ_post gives the
/// product Π_j (1 + u z g(Y*_j))^{-e_j} against the prior exponent. When
/// θ_post = q the Beta law degenerates at u = 1 and the value is
/// laplace_gamma(posterior, g, z).
double eq13_value(const ShapeMeasure& posterior, const Functional& g, double q, double z,
                  int m_quad = kDefaultQuadOrder);

/// Same, with the posterior built from a prior shape and observations.
double eq13_value(const ShapeMeasure& prior, const ObservationSet& obs, const Functional& g, double q, double z,
                  int m_quad = kDefaultQuadOrder);

/// E[(1 + z P(g))^{-q}] for θ > q, as ∫ exp(-ψ(u z)) Beta(du | q, θ - q).
double cs_eq15(const ShapeMeasure& shape, const Functional& g, double z, double q, int m_quad = kDefaultQuadOrder);

/// E[(1 + z P(g))^{-1}] for every θ > 0, as
/// ∫ exp(-ψ(u z)) [∫ H(dy) / (1 + u z g(y))] Beta(du | 1, θ).
double cs_eq17(const ShapeMeasure& shape, const Functional& g, double z, int m_quad = kDefaultQuadOrder);

/// Exact partition expansion of E[(1 + z P(g))^{-q}] at depth n for
/// nonatomic H:
///   Σ_p π(p|θ) ∫ exp(-ψ(u z)) Π_j M_{e_j}(u) Beta(du | q, θ + n - q),
/// with M_e(u) = moment_integral(H, g, z, u, e). Requires θ + n - q > 0 and
/// n <= kMaxExactDepth; n = 0 is cs_eq15.
double cs_partition_expansion_exact(const ShapeMeasure& shape, const Functional& g, double z, double q, int n,
                                    int m_quad = kDefaultQuadOrder);

/// (1 + v)^{-θ} exp(-ψ(w / (1 + v))), the joint Laplace transform of (T, μ(g)).
double eq11_rhs(const ShapeMeasure& shape, const Functional& g, double v, double w);

/// (1/Γ(q)) ∫_0^∞ v^{q-1} e^{-vT} dv evaluated by quadrature: a Gauss-Jacobi
/// rule on (0, 1) and a Gauss-Laguerre rule on (1, ∞). Equals T^{-q}.
double gamma_identity_check(double t, double q);

/// Evaluates the integrand of eq13_value for many posteriors that share a
/// prior, a depth n and a z-grid. The prior exponent is tabulated once per
/// (node, z), so each posterior costs O(m · n(p)) operations.
class Eq13Kernel {
 public:
  Eq13Kernel(const ShapeMeasure& prior, const Functional& g, double q, int n, std::vector<double> zs,
             int m_quad = kDefaultQuadOrder);

  /// Values for each z, for posterior prior + Σ δ_{Y_i} with |obs| = n.
  void evaluate(const ObservationSet& obs, std::span<double> out) const;
  std::size_t size() const { return zs_.size(); }

 private:
  Functional g_;
  double q_;
  int n_;
  std::vector<double> zs_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  bool degenerate_ = false;              // θ + n = q
  std::vector<double> prior_factor_;     // [z][node] exp(-ψ_prior(u z)), or exp(-ψ_prior(z))
};

}  // namespace dpf

#endif  // DPF_TRANSFORMS_HPP_
