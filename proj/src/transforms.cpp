#include "dpf/transforms.hpp"

#include "dpf/quadrature.hpp"
#include "dpf/samplers.hpp"
#include "dpf/special.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace dpf {

namespace {

void require_nonnegative_z(double z, const char* op) {
  if (!(z >= 0.0) || !std::isfinite(z)) {
    throw std::domain_error(std::string(op) + ": z must be a finite nonnegative real");
  }
}

double psi_unchecked(const ShapeMeasure& shape, const Functional& g, std::span<const double> bp, double z,
                     QuadMethod method = QuadMethod::fixed) {
  if (z == 0.0) return 0.0;
  return integrate_shape(
      shape, [&](double y) { return std::log1p(z * g(y)); }, bp, method);
}

double moment_unchecked(const BaseMeasure& h, const Functional& g, std::span<const double> bp, double uz, int e,
                        QuadMethod method = QuadMethod::fixed) {
  if (e == 0 || uz == 0.0) return 1.0;
  return expect_base(
      h, [&](double y) { return std::exp(-e * std::log1p(uz * g(y))); }, bp, method);
}

}  // namespace

void require_positive_kernel(const BaseMeasure& h, const Functional& g, double z) {
  const Interval r = g.range_on(h);
  const double worst = 1.0 + std::min(z * r.lo, z * r.hi);
  if (!(worst > 0.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "1 + z*g(y) > 0 fails on the support (z = " << z << ", g range [" << r.lo << ", " << r.hi << "])";
    throw std::domain_error(os.str());
  }
}

double psi(const ShapeMeasure& shape, const Functional& g, double z, QuadMethod method) {
  require_nonnegative_z(z, "psi");
  require_positive_kernel(shape.base(), g, z);
  const auto bp = g.breakpoints();
  return psi_unchecked(shape, g, bp, z, method);
}

double laplace_gamma(const ShapeMeasure& shape, const Functional& g, double z) {
  return std::exp(-psi(shape, g, z));
}

double moment_integral(const BaseMeasure& h, const Functional& g, double z, double u, int e, QuadMethod method) {
  if (e < 0) throw std::invalid_argument("moment_integral: e must be nonnegative");
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("moment_integral: u must lie in [0, 1]");
  require_nonnegative_z(z, "moment_integral");
  require_positive_kernel(h, g, z);
  const auto bp = g.breakpoints();
  return moment_unchecked(h, g, bp, u * z, e, method);
}

double eq13_value(const ShapeMeasure& posterior, const Functional& g, double q, double z, int m_quad) {
  require_nonnegative_z(z, "eq13_value");
  if (!(q > 0.0)) throw std::invalid_argument("eq13_value: q must be positive");
  const double b = posterior.theta() - q;
  if (b < 0.0) throw std::domain_error("eq13_value: requires theta + n - q > 0");
  require_positive_kernel(posterior.base(), g, z);
  if (z == 0.0) return 1.0;
  const auto bp = g.breakpoints();
  if (b == 0.0) return std::exp(-psi_unchecked(posterior, g, bp, z));
  const auto rule = jacobi_rule(q, b, m_quad);
  return rule->integrate([&](double u) { return std::exp(-psi_unchecked(posterior, g, bp, u * z)); });
}

double eq13_value(const ShapeMeasure& prior, const ObservationSet& obs, const Functional& g, double q, double z,
                  int m_quad) {
  return eq13_value(posterior_shape(prior, obs), g, q, z, m_quad);
}

double cs_eq15(const ShapeMeasure& shape, const Functional& g, double z, double q, int m_quad) {
  if (!(shape.theta() - q > 0.0)) throw std::domain_error("cs_eq15: requires theta - q > 0");
  return eq13_value(shape, g, q, z, m_quad);
}

double cs_eq17(const ShapeMeasure& shape, const Functional& g, double z, int m_quad) {
  require_nonnegative_z(z, "cs_eq17");
  require_positive_kernel(shape.base(), g, z);
  if (z == 0.0) return 1.0;
  const auto bp = g.breakpoints();
  const auto rule = jacobi_rule(1.0, shape.theta(), m_quad);
  return rule->integrate([&](double u) {
    return std::exp(-psi_unchecked(shape, g, bp, u * z)) * moment_unchecked(shape.base(), g, bp, u * z, 1);
  });
}

double cs_partition_expansion_exact(const ShapeMeasure& shape, const Functional& g, double z, double q, int n,
                                    int m_quad) {
  require_nonnegative_z(z, "cs_partition_expansion");
  if (!(q > 0.0)) throw std::invalid_argument("cs_partition_expansion: q must be positive");
  if (n < 0 || n > kMaxExactDepth) throw std::out_of_range("cs_partition_expansion: exact mode needs 0 <= n <= 10");
  if (!shape.base().nonatomic()) throw std::invalid_argument("cs_partition_expansion: exact mode needs a nonatomic H");
  const double theta = shape.theta();
  if (!(theta + n - q > 0.0)) throw std::domain_error("cs_partition_expansion: requires theta + n - q > 0");
  if (n == 0) return cs_eq15(shape, g, z, q, m_quad);
  require_positive_kernel(shape.base(), g, z);
  if (z == 0.0) return 1.0;

  // Ewens mass aggregated by the multiset of cell sizes.
  std::map<std::vector<int>, double> by_sizes;
  for (const Partition& p : enumerate_partitions(n)) {
    auto sizes = p.sizes();
    std::sort(sizes.begin(), sizes.end());
    by_sizes[sizes] += std::exp(ewens_log_prob(p, theta));
  }

  const auto bp = g.breakpoints();
  const auto rule = jacobi_rule(q, theta + n - q, m_quad);
  std::vector<double> moments(static_cast<std::size_t>(n) + 1);
  return rule->integrate([&](double u) {
    for (int e = 0; e <= n; ++e) moments[static_cast<std::size_t>(e)] = moment_unchecked(shape.base(), g, bp, u * z, e);
    double mix = 0.0;
    for (const auto& [sizes, weight] : by_sizes) {
      double prod = weight;
      for (int e : sizes) prod *= moments[static_cast<std::size_t>(e)];
      mix += prod;
    }
    return std::exp(-psi_unchecked(shape, g, bp, u * z)) * mix;
  });
}

double eq11_rhs(const ShapeMeasure& shape, const Functional& g, double v, double w) {
  if (!(v > -1.0)) throw std::domain_error("eq11_rhs: requires v > -1");
  if (!(w >= 0.0)) throw std::domain_error("eq11_rhs: requires w >= 0");
  return std::exp(-shape.theta() * std::log1p(v) - psi(shape, g, w / (1.0 + v)));
}

double gamma_identity_check(double t, double q) {
  if (!(t > 0.0) || !(q > 0.0)) throw std::invalid_argument("gamma_identity_check: T and q must be positive");
  constexpr int kOrder = 96;
  // Split at c = max(1, 1/T) so that both pieces see an O(1) decay scale.
  const double c = std::max(1.0, 1.0 / t);
  // ∫_0^c v^{q-1} e^{-vT} dv = (c^q / q) E[e^{-cVT}], V ~ Beta(q, 1).
  const double head = std::pow(c, q) / q *
                      jacobi_rule(q, 1.0, kOrder)->integrate([&](double v) { return std::exp(-c * v * t); });
  // ∫_c^∞ v^{q-1} e^{-vT} dv = (e^{-cT} c^{q-1} / T) ∫_0^∞ (1 + y/(cT))^{q-1} e^{-y} dy.
  const double tail = std::exp(-c * t) * std::pow(c, q - 1.0) / t *
                      laguerre_rule(kOrder)->integrate([&](double y) { return std::pow(1.0 + y / (c * t), q - 1.0); });
  return std::exp(std::log(head + tail) - log_gamma(q));
}

// ---------------------------------------------------------------------------

Eq13Kernel::Eq13Kernel(const ShapeMeasure& prior, const Functional& g, double q, int n, std::vector<double> zs,
                       int m_quad)
    : g_(g), q_(q), n_(n), zs_(std::move(zs)) {
  if (!(q > 0.0)) throw std::invalid_argument("Eq13Kernel: q must be positive");
  if (n < 0) throw std::invalid_argument("Eq13Kernel: n must be nonnegative");
  const double b = prior.theta() + n - q;
  if (b < 0.0) throw std::domain_error("Eq13Kernel: requires theta + n - q > 0");
  for (double z : zs_) {
    require_nonnegative_z(z, "Eq13Kernel");
    require_positive_kernel(prior.base(), g, z);
  }
  const auto bp = g.breakpoints();
  degenerate_ = b == 0.0;
  if (degenerate_) {
    nodes_ = {1.0};
    weights_ = {1.0};
  } else {
    const auto rule = jacobi_rule(q, b, m_quad);
    nodes_ = rule->nodes;
    weights_ = rule->weights;
  }
  prior_factor_.reserve(zs_.size() * nodes_.size());
  for (double z : zs_) {
    for (double u : nodes_) prior_factor_.push_back(std::exp(-psi_unchecked(prior, g, bp, u * z)));
  }
}

void Eq13Kernel::evaluate(const ObservationSet& obs, std::span<double> out) const {
  if (static_cast<int>(obs.size()) != n_) throw std::invalid_argument("Eq13Kernel: observation count differs from n");
  const auto& ys = obs.uniques();
  const auto es = obs.multiplicities();
  std::vector<double> gy(ys.size());
  for (std::size_t j = 0; j < ys.size(); ++j) gy[j] = g_(ys[j]);
  const std::size_t m = nodes_.size();
  for (std::size_t iz = 0; iz < zs_.size(); ++iz) {
    const double z = zs_[iz];
    if (z == 0.0) {
      out[iz] = 1.0;
      continue;
    }
    double s = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double uz = nodes_[k] * z;
      double log_prod = 0.0;
      for (std::size_t j = 0; j < gy.size(); ++j) log_prod -= es[j] * std::log1p(uz * gy[j]);
      s += weights_[k] * prior_factor_[iz * m + k] * std::exp(log_prod);
    }
    out[iz] = s;
  }
}

}  // namespace dpf
