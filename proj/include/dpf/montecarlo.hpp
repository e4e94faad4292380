#ifndef DPF_MONTECARLO_HPP_
#define DPF_MONTECARLO_HPP_

#include "dpf/measures.hpp"
#include "dpf/rng.hpp"
#include "dpf/samplers.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace dpf {

/// Streaming mean/variance (Welford), mergeable with Chan's pairwise update.
class StreamingMoments {
 public:
  void add(double x);
  void merge(const StreamingMoments& o);

  std::int64_t count() const { return n_; }
  double mean() const { return mean_; }
  /// Unbiased sample variance; 0 for fewer than two samples.
  double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  double std_error() const { return n_ > 0 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0; }

 private:
  std::int64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> path;
};

/// Sample count and chunking. Chunk c of a run draws from rng.child(c) and
/// chunks are merged in index order, so results depend on (seed, path,
/// n_samples, chunk_size) but never on `jobs`.
struct McOptions {
  std::int64_t n_samples = 100000;
  std::int64_t chunk_size = 10000;
  int jobs = 1;
  double eps = kDefaultEps;
};

/// Runs `draw` n_samples times; each call fills one value per output slot.
std::vector<McEstimate> mc_estimate(const RngStream& rng, const McOptions& opts, std::size_t width,
                                    const std::function<void(RngStream&, std::span<double>)>& draw);

/// Collects n_samples scalar draws in deterministic chunk order.
std::vector<double> mc_draws(const RngStream& rng, const McOptions& opts,
                             const std::function<double(RngStream&)>& draw);

/// E[(1 + z P(g))^{-q}] over Dirichlet draws, one estimate per z.
std::vector<McEstimate> cs_transform_mc(const ShapeMeasure& shape, const Functional& g, std::span<const double> zs,
                                        double q, const McOptions& opts, const RngStream& rng);
McEstimate cs_transform_mc(const ShapeMeasure& shape, const Functional& g, double z, double q,
                           const McOptions& opts, const RngStream& rng);

/// E[exp(-z μ(g))] for μ ~ BG(θH, d), one estimate per z. Requires θ - d > 0.
std::vector<McEstimate> bg_laplace_mc(const ShapeMeasure& shape, double d, const Functional& g,
                                      std::span<const double> zs, const McOptions& opts, const RngStream& rng);
McEstimate bg_laplace_mc(const ShapeMeasure& shape, double d, const Functional& g, double z,
                         const McOptions& opts, const RngStream& rng);

/// Average of eq13_value at the posterior over Blackwell-MacQueen samples of
/// size n. Estimates E[(1 + z P(g))^{-q}] for any H (the mc mode of the
/// partition expansion). Requires θ + n - q >= 0.
std::vector<McEstimate> partition_expansion_mc(const ShapeMeasure& shape, const Functional& g,
                                               std::span<const double> zs, double q, int n, int m_quad,
                                               const McOptions& opts, const RngStream& rng);

}  // namespace dpf

#endif  // DPF_MONTECARLO_HPP_
