#include "dpf/samplers.hpp"

#include "dpf/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dpf {

namespace {

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument(std::string(what) + " must be positive");
}

// Marsaglia-Tsang for shape >= 1; returns d*v, the Gamma draw itself.
double marsaglia_tsang(double shape, RngStream& rng) {
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace

double sample_log_gamma(double shape, RngStream& rng) {
  require_positive(shape, "sample_gamma: shape");
  if (shape >= 1.0) return std::log(marsaglia_tsang(shape, rng));
  // G_a = G_{a+1} U^{1/a}
  const double g = marsaglia_tsang(shape + 1.0, rng);
  return std::log(g) + std::log(rng.uniform()) / shape;
}

double sample_gamma(double shape, RngStream& rng) {
  require_positive(shape, "sample_gamma: shape");
  if (shape >= 1.0) return marsaglia_tsang(shape, rng);
  return std::exp(sample_log_gamma(shape, rng));
}

double sample_beta(double a, double b, RngStream& rng) {
  require_positive(a, "sample_beta: a");
  require_positive(b, "sample_beta: b");
  if (a == 1.0) return -std::expm1(std::log(rng.uniform()) / b);
  if (b == 1.0) return std::exp(std::log(rng.uniform()) / a);
  const double la = sample_log_gamma(a, rng);
  const double lb = sample_log_gamma(b, rng);
  return 1.0 / (1.0 + std::exp(lb - la));
}

double sample_positive_stable(double p, RngStream& rng) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("sample_positive_stable: p must lie in (0, 1)");
  const double u = std::numbers::pi * rng.uniform();
  const double e = rng.exponential();
  const double log_a = (p / (1.0 - p)) * std::log(std::sin(p * u)) + std::log(std::sin((1.0 - p) * u)) -
                       std::log(std::sin(u)) / (1.0 - p);
  return std::exp(((1.0 - p) / p) * (log_a - std::log(e)));
}

double sample_base(const BaseMeasure& h, RngStream& rng) {
  const double u = rng.uniform();
  double cum = 0.0;
  for (const Atom& a : h.atoms()) {
    cum += a.prob;
    if (u < cum) return a.location;
  }
  if (!h.diffuse()) return h.atoms().back().location;  // u landed in rounding slack
  const DiffusePart& d = *h.diffuse();
  if (d.family == DiffuseFamily::uniform) return d.a + (d.b - d.a) * rng.uniform();
  if (d.a == 0.5 && d.b == 0.5) {
    const double s = std::sin(0.5 * std::numbers::pi * rng.uniform());
    return s * s;
  }
  return sample_beta(d.a, d.b, rng);
}

int stick_count(double theta, double eps) {
  require_positive(theta, "stick_count: theta");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("stick_count: eps must lie in (0, 1)");
  const double n = std::ceil(std::log(eps) / std::log(theta / (1.0 + theta)));
  return std::max(1, static_cast<int>(n));
}

RandomMeasureRealization sample_dirichlet_sb(const ShapeMeasure& shape, double eps, RngStream& rng) {
  const double theta = shape.theta();
  const int n = stick_count(theta, eps);
  RandomMeasureRealization m;
  m.atoms.reserve(static_cast<std::size_t>(n) + 1);
  double remaining = 1.0;
  for (int k = 0; k < n; ++k) {
    // V ~ Beta(1, θ) by inversion; 1 - V = U^{1/θ}.
    const double log_keep = std::log(rng.uniform()) / theta;
    const double w = remaining * -std::expm1(log_keep);
    remaining *= std::exp(log_keep);
    const double y = sample_base(shape.base(), rng);
    if (w > 0.0) m.atoms.push_back({y, w});
  }
  const double y = sample_base(shape.base(), rng);
  if (remaining > 0.0) m.atoms.push_back({y, remaining});
  m.total_mass = 1.0;
  m.normalized = true;
  m.truncation_bound = eps;
  return m;
}

namespace {

RandomMeasureRealization scaled(RandomMeasureRealization m, double t) {
  double sum = 0.0;
  for (WeightedAtom& a : m.atoms) {
    a.weight *= t;
    sum += a.weight;
  }
  std::erase_if(m.atoms, [](const WeightedAtom& a) { return !(a.weight > 0.0); });
  m.total_mass = sum;
  m.normalized = false;
  return m;
}

}  // namespace

RandomMeasureRealization sample_gamma_process(const ShapeMeasure& shape, double eps, RngStream& rng) {
  RandomMeasureRealization p = sample_dirichlet_sb(shape, eps, rng);
  return scaled(std::move(p), sample_gamma(shape.theta(), rng));
}

RandomMeasureRealization sample_beta_gamma(const ShapeMeasure& shape, double d, double eps, RngStream& rng) {
  const double shape_t = shape.theta() - d;
  if (!(shape_t > 0.0)) throw std::invalid_argument("sample_beta_gamma: requires theta - d > 0");
  RandomMeasureRealization p = sample_dirichlet_sb(shape, eps, rng);
  return scaled(std::move(p), sample_gamma(shape_t, rng));
}

Partition sample_crp(double theta, int n, RngStream& rng) {
  require_positive(theta, "sample_crp: theta");
  if (n < 1) throw std::invalid_argument("sample_crp: n must be at least 1");
  std::vector<int> labels(static_cast<std::size_t>(n));
  std::vector<int> counts;
  for (int i = 0; i < n; ++i) {
    double r = rng.uniform() * (theta + i);
    int table = static_cast<int>(counts.size());
    for (int j = 0; j < static_cast<int>(counts.size()); ++j) {
      r -= counts[static_cast<std::size_t>(j)];
      if (r < 0.0) {
        table = j;
        break;
      }
    }
    if (table == static_cast<int>(counts.size())) counts.push_back(0);
    ++counts[static_cast<std::size_t>(table)];
    labels[static_cast<std::size_t>(i)] = table;
  }
  return Partition::from_labels(labels);
}

ObservationSet sample_blackwell_macqueen(const ShapeMeasure& shape, int n, RngStream& rng) {
  if (n < 0) throw std::invalid_argument("sample_blackwell_macqueen: n must be nonnegative");
  const double theta = shape.theta();
  std::vector<double> ys;
  ys.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (rng.uniform() * (theta + i) < theta) {
      ys.push_back(sample_base(shape.base(), rng));
    } else {
      ys.push_back(ys[rng.below(static_cast<std::uint64_t>(i))]);
    }
  }
  return ObservationSet(std::move(ys));
}

double ewens_log_prob(const Partition& p, double theta) {
  require_positive(theta, "ewens_log_prob: theta");
  double s = p.count() * std::log(theta) + log_gamma(theta) - log_gamma(theta + p.n());
  for (int e : p.sizes()) s += log_gamma(static_cast<double>(e));
  return s;
}

std::vector<Partition> enumerate_partitions(int n) {
  if (n < 1 || n > 12) throw std::out_of_range("enumerate_partitions: n must lie in [1, 12]");
  std::vector<Partition> out;
  // Restricted growth strings: a[0] = 0, a[i] <= 1 + max(a[0..i-1]).
  std::vector<int> a(static_cast<std::size_t>(n), 0);
  std::vector<int> mx(static_cast<std::size_t>(n), 0);
  for (;;) {
    out.push_back(Partition::from_labels(a));
    int i = n - 1;
    while (i > 0 && a[static_cast<std::size_t>(i)] == mx[static_cast<std::size_t>(i - 1)] + 1) --i;
    if (i == 0) break;
    ++a[static_cast<std::size_t>(i)];
    mx[static_cast<std::size_t>(i)] = std::max(mx[static_cast<std::size_t>(i - 1)], a[static_cast<std::size_t>(i)]);
    for (int j = i + 1; j < n; ++j) {
      a[static_cast<std::size_t>(j)] = 0;
      mx[static_cast<std::size_t>(j)] = mx[static_cast<std::size_t>(i)];
    }
  }
  return out;
}

int minimal_depth(double theta, double q) {
  int n = 0;
  while (!(theta + n - q > 0.0)) ++n;
  return n;
}

AuxiliaryDraws sample_eq18_parts(const ShapeMeasure& shape, double q, int n, const Functional& g, double eps,
                                 RngStream& rng) {
  require_positive(q, "sample_rhs_eq18: q");
  if (n < 0) throw std::invalid_argument("sample_rhs_eq18: n must be nonnegative");
  const double theta = shape.theta();
  if (!(theta + n - q > 0.0)) throw std::invalid_argument("sample_rhs_eq18: requires theta + n - q > 0");
  AuxiliaryDraws aux;
  const ObservationSet obs = sample_blackwell_macqueen(shape, n, rng);
  aux.u = sample_beta(q, theta + n - q, rng);
  const RandomMeasureRealization mu = sample_gamma_process(shape, eps, rng);
  aux.t = mu.total_mass;
  aux.mu_g = functional_eval(mu, g);
  aux.locations = obs.uniques();
  for (int e : obs.multiplicities()) aux.gammas.push_back(sample_gamma(e, rng));
  return aux;
}

double sample_rhs_eq18(const ShapeMeasure& shape, double q, int n, const Functional& g, double eps,
                       RngStream& rng) {
  const AuxiliaryDraws aux = sample_eq18_parts(shape, q, n, g, eps, rng);
  double s = aux.mu_g;
  for (std::size_t j = 0; j < aux.gammas.size(); ++j) s += aux.gammas[j] * g(aux.locations[j]);
  return aux.u * s;
}

double sample_remark25_u(double theta, double p, RngStream& rng) {
  require_positive(theta, "sample_remark25_u: theta");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("sample_remark25_u: p must lie in (0, 1)");
  const double log_t1 = std::log(rng.exponential());
  const double log_tt = sample_log_gamma(theta, rng);
  const double log_s = std::log(sample_positive_stable(p, rng));
  // τ_p = S^p.
  const double num = p * log_t1;
  const double other = log_tt + p * log_s;
  // Keep the ratio strictly inside (0, 1) when the log-odds leave double range.
  const double u = 1.0 / (1.0 + std::exp(other - num));
  return std::clamp(u, std::numeric_limits<double>::min(), std::nextafter(1.0, 0.0));
}

}  // namespace dpf
