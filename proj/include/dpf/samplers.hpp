#ifndef DPF_SAMPLERS_HPP_
#define DPF_SAMPLERS_HPP_

#include "dpf/measures.hpp"
#include "dpf/rng.hpp"

#include <optional>
#include <vector>

namespace dpf {

/// Default truncation level for stick-breaking draws.
inline constexpr double kDefaultEps = 1e-8;

// Scalar variates -----------------------------------------------------------

/// Gamma(shape, 1). Marsaglia-Tsang, boosted for shape < 1.
double sample_gamma(double shape, RngStream& rng);
/// log of a Gamma(shape, 1) draw; finite even when the draw underflows.
double sample_log_gamma(double shape, RngStream& rng);
double sample_beta(double a, double b, RngStream& rng);
/// Positive p-stable S with E[exp(-s S)] = exp(-s^p), via Kanter's exact
/// trigonometric representation.
double sample_positive_stable(double p, RngStream& rng);

// Base measure --------------------------------------------------------------

double sample_base(const BaseMeasure& h, RngStream& rng);

// Random measures -----------------------------------------------------------

/// Number of sticks N with (θ/(1+θ))^N <= eps.
int stick_count(double theta, double eps);

/// Dirichlet process P ~ D(θH) by truncated stick-breaking: N Beta(1, θ)
/// sticks plus one extra H-draw carrying the leftover mass, so the weights
/// sum to one. truncation_bound = eps.
RandomMeasureRealization sample_dirichlet_sb(const ShapeMeasure& shape, double eps, RngStream& rng);

/// Gamma process μ = T_θ P with T_θ ~ Gamma(θ) independent of P.
RandomMeasureRealization sample_gamma_process(const ShapeMeasure& shape, double eps, RngStream& rng);

/// Beta-Gamma process with parameters (θH, d), realized as T_{θ-d} P.
/// Requires θ - d > 0; d may be negative.
RandomMeasureRealization sample_beta_gamma(const ShapeMeasure& shape, double d, double eps, RngStream& rng);

// Partitions and urns -------------------------------------------------------

/// Chinese restaurant process: law π(p|θ) on partitions of {0..n-1}.
Partition sample_crp(double theta, int n, RngStream& rng);

/// Blackwell-MacQueen urn: Y_i ~ (θH + Σ_{j<i} δ_{Y_j}) / (θ + i - 1).
ObservationSet sample_blackwell_macqueen(const ShapeMeasure& shape, int n, RngStream& rng);

/// log π(p|θ) = n(p) log θ + log Γ(θ) - log Γ(θ+n) + Σ log (e_j - 1)!.
double ewens_log_prob(const Partition& p, double theta);

/// All set partitions of {0..n-1}, 1 <= n <= 12, in restricted-growth order.
std::vector<Partition> enumerate_partitions(int n);

// Distributional identities ------------------------------------------------

/// The independent ingredients of one draw of the mixture representation of
/// a Beta-Gamma process functional.
struct AuxiliaryDraws {
  double u = 0.0;                 // U_{q, θ+n-q}
  double t = 0.0;                 // total mass of μ_θ
  double mu_g = 0.0;              // μ_θ(g)
  std::vector<double> gammas;     // G_{j,n} ~ Gamma(e_j)
  std::vector<double> locations;  // Y*_j
  std::optional<double> stable;   // τ_p
};

/// Smallest n >= 0 with θ + n - q > 0.
int minimal_depth(double theta, double q);

AuxiliaryDraws sample_eq18_parts(const ShapeMeasure& shape, double q, int n, const Functional& g, double eps,
                                 RngStream& rng);

/// U (μ_θ(g) + Σ_j G_j g(Y*_j)) with Y = (Y*, p) from the Blackwell-MacQueen
/// urn, U ~ Beta(q, θ+n-q); equal in law to μ_{θ,θ-q}(g). Requires θ+n-q > 0.
double sample_rhs_eq18(const ShapeMeasure& shape, double q, int n, const Functional& g, double eps,
                       RngStream& rng);

/// T_1^p / (T_1^p + T_θ τ_p) with τ_p = S^p, S positive p-stable; this is
/// Beta(1, θ) in law. Requires 0 < p < 1.
double sample_remark25_u(double theta, double p, RngStream& rng);

}  // namespace dpf

#endif  // DPF_SAMPLERS_HPP_
