#include "dpf/montecarlo.hpp"

#include "dpf/transforms.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace dpf {

void StreamingMoments::add(double x) {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

void StreamingMoments::merge(const StreamingMoments& o) {
  if (o.n_ == 0) return;
  if (n_ == 0) {
    *this = o;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(o.n_);
  const double n = na + nb;
  const double delta = o.mean_ - mean_;
  mean_ += delta * nb / n;
  m2_ += o.m2_ + delta * delta * na * nb / n;
  n_ += o.n_;
}

namespace {

// Runs body(chunk_index, first_sample, count) for every chunk on up to `jobs`
// threads. Work assignment is dynamic; callers store per-chunk results.
void for_each_chunk(const McOptions& opts, const std::function<void(std::int64_t, std::int64_t)>& body) {
  if (opts.n_samples < 1) throw std::invalid_argument("Monte Carlo: n_samples must be positive");
  if (opts.chunk_size < 1) throw std::invalid_argument("Monte Carlo: chunk_size must be positive");
  const std::int64_t chunks = (opts.n_samples + opts.chunk_size - 1) / opts.chunk_size;
  auto count_of = [&](std::int64_t c) { return std::min(opts.chunk_size, opts.n_samples - c * opts.chunk_size); };
  const int jobs = static_cast<int>(std::clamp<std::int64_t>(opts.jobs, 1, chunks));
  if (jobs == 1) {
    for (std::int64_t c = 0; c < chunks; ++c) body(c, count_of(c));
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(jobs));
  for (int t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (std::int64_t c = next++; c < chunks; c = next++) {
        try {
          body(c, count_of(c));
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = chunks;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::int64_t chunk_count(const McOptions& opts) { return (opts.n_samples + opts.chunk_size - 1) / opts.chunk_size; }

}  // namespace

std::vector<McEstimate> mc_estimate(const RngStream& rng, const McOptions& opts, std::size_t width,
                                    const std::function<void(RngStream&, std::span<double>)>& draw) {
  std::vector<std::vector<StreamingMoments>> per_chunk(static_cast<std::size_t>(chunk_count(opts)),
                                                       std::vector<StreamingMoments>(width));
  for_each_chunk(opts, [&](std::int64_t c, std::int64_t count) {
    RngStream local = rng.child(static_cast<std::uint64_t>(c));
    auto& acc = per_chunk[static_cast<std::size_t>(c)];
    std::vector<double> values(width);
    for (std::int64_t i = 0; i < count; ++i) {
      draw(local, values);
      for (std::size_t k = 0; k < width; ++k) acc[k].add(values[k]);
    }
  });
  std::vector<StreamingMoments> total(width);
  for (const auto& acc : per_chunk) {
    for (std::size_t k = 0; k < width; ++k) total[k].merge(acc[k]);
  }
  std::vector<McEstimate> out(width);
  for (std::size_t k = 0; k < width; ++k) {
    out[k] = {total[k].mean(), total[k].std_error(), total[k].count(), rng.seed(), rng.path()};
  }
  return out;
}

std::vector<double> mc_draws(const RngStream& rng, const McOptions& opts,
                             const std::function<double(RngStream&)>& draw) {
  std::vector<double> out(static_cast<std::size_t>(opts.n_samples));
  for_each_chunk(opts, [&](std::int64_t c, std::int64_t count) {
    RngStream local = rng.child(static_cast<std::uint64_t>(c));
    const std::int64_t first = c * opts.chunk_size;
    for (std::int64_t i = 0; i < count; ++i) out[static_cast<std::size_t>(first + i)] = draw(local);
  });
  return out;
}

std::vector<McEstimate> cs_transform_mc(const ShapeMeasure& shape, const Functional& g, std::span<const double> zs,
                                        double q, const McOptions& opts, const RngStream& rng) {
  if (!(q > 0.0)) throw std::invalid_argument("cs_transform_mc: q must be positive");
  for (double z : zs) {
    if (!(z >= 0.0)) throw std::domain_error("cs_transform_mc: z must be nonnegative");
    require_positive_kernel(shape.base(), g, z);
  }
  const std::vector<double> zv(zs.begin(), zs.end());
  return mc_estimate(rng, opts, zv.size(), [&](RngStream& r, std::span<double> out) {
    const double pg = functional_eval(sample_dirichlet_sb(shape, opts.eps, r), g);
    for (std::size_t k = 0; k < zv.size(); ++k) out[k] = std::exp(-q * std::log1p(zv[k] * pg));
  });
}

McEstimate cs_transform_mc(const ShapeMeasure& shape, const Functional& g, double z, double q,
                           const McOptions& opts, const RngStream& rng) {
  const double zs[] = {z};
  return cs_transform_mc(shape, g, zs, q, opts, rng).front();
}

std::vector<McEstimate> bg_laplace_mc(const ShapeMeasure& shape, double d, const Functional& g,
                                      std::span<const double> zs, const McOptions& opts, const RngStream& rng) {
  if (!(shape.theta() - d > 0.0)) throw std::invalid_argument("bg_laplace_mc: requires theta - d > 0");
  const std::vector<double> zv(zs.begin(), zs.end());
  return mc_estimate(rng, opts, zv.size(), [&](RngStream& r, std::span<double> out) {
    const double mg = functional_eval(sample_beta_gamma(shape, d, opts.eps, r), g);
    for (std::size_t k = 0; k < zv.size(); ++k) out[k] = std::exp(-zv[k] * mg);
  });
}

McEstimate bg_laplace_mc(const ShapeMeasure& shape, double d, const Functional& g, double z,
                         const McOptions& opts, const RngStream& rng) {
  const double zs[] = {z};
  return bg_laplace_mc(shape, d, g, zs, opts, rng).front();
}

std::vector<McEstimate> partition_expansion_mc(const ShapeMeasure& shape, const Functional& g,
                                               std::span<const double> zs, double q, int n, int m_quad,
                                               const McOptions& opts, const RngStream& rng) {
  const Eq13Kernel kernel(shape, g, q, n, std::vector<double>(zs.begin(), zs.end()), m_quad);
  return mc_estimate(rng, opts, kernel.size(), [&](RngStream& r, std::span<double> out) {
    kernel.evaluate(sample_blackwell_macqueen(shape, n, r), out);
  });
}

}  // namespace dpf
