#include "dpf/measures.hpp"

#include "dpf/quadrature.hpp"
#include "dpf/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dpf {

namespace {

constexpr double kSumTol = 1e-12;

std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// DiffusePart

Interval DiffusePart::support() const {
  if (family == DiffuseFamily::uniform) return {a, b};
  return {0.0, 1.0};
}

double DiffusePart::cdf(double y) const {
  const Interval s = support();
  if (y <= s.lo) return 0.0;
  if (y >= s.hi) return 1.0;
  if (family == DiffuseFamily::uniform) return (y - a) / (b - a);
  return reg_inc_beta(a, b, y);
}

std::pair<double, double> DiffusePart::unit_shapes() const {
  if (family == DiffuseFamily::uniform) return {1.0, 1.0};
  return {a, b};
}

// ---------------------------------------------------------------------------
// BaseMeasure

BaseMeasure::BaseMeasure(std::optional<DiffusePart> diffuse, double diffuse_weight,
                         std::vector<Atom> atoms)
    : diffuse_(std::move(diffuse)), diffuse_weight_(diffuse_weight), atoms_(std::move(atoms)) {
  if (!diffuse_) {
    if (diffuse_weight_ != 0.0) throw std::invalid_argument("BaseMeasure: diffuse weight without a diffuse part");
  } else {
    if (!(diffuse_weight_ > 0.0 && diffuse_weight_ <= 1.0)) {
      throw std::invalid_argument("BaseMeasure: diffuse weight must lie in (0, 1]");
    }
    const auto& d = *diffuse_;
    if (d.family == DiffuseFamily::uniform && !(d.a < d.b)) {
      throw std::invalid_argument("BaseMeasure: uniform family needs a < b");
    }
    if (d.family == DiffuseFamily::beta && !(d.a > 0.0 && d.b > 0.0)) {
      throw std::invalid_argument("BaseMeasure: beta family needs positive shapes");
    }
    if (!std::isfinite(d.a) || !std::isfinite(d.b)) {
      throw std::invalid_argument("BaseMeasure: diffuse parameters must be finite");
    }
  }
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& x, const Atom& y) { return x.location < y.location; });
  double total = diffuse_weight_;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (!(atoms_[i].prob > 0.0)) throw std::invalid_argument("BaseMeasure: atom probabilities must be positive");
    if (!std::isfinite(atoms_[i].location)) throw std::invalid_argument("BaseMeasure: atom locations must be finite");
    if (i > 0 && atoms_[i].location == atoms_[i - 1].location) {
      throw std::invalid_argument("BaseMeasure: atom locations must be distinct");
    }
    total += atoms_[i].prob;
  }
  if (std::fabs(total - 1.0) > kSumTol) {
    throw std::invalid_argument("BaseMeasure: diffuse weight plus atom probabilities must sum to 1, got " +
                                fmt_double(total));
  }
}

BaseMeasure BaseMeasure::uniform(double lo, double hi) {
  return BaseMeasure(DiffusePart{DiffuseFamily::uniform, lo, hi}, 1.0, {});
}

BaseMeasure BaseMeasure::beta(double a, double b) {
  return BaseMeasure(DiffusePart{DiffuseFamily::beta, a, b}, 1.0, {});
}

BaseMeasure BaseMeasure::arcsine() { return beta(0.5, 0.5); }

BaseMeasure BaseMeasure::dirac(double x) { return BaseMeasure(std::nullopt, 0.0, {{x, 1.0}}); }

BaseMeasure BaseMeasure::discrete(std::vector<Atom> atoms) {
  return BaseMeasure(std::nullopt, 0.0, std::move(atoms));
}

Interval BaseMeasure::support_hull() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  if (diffuse_) {
    const Interval s = diffuse_->support();
    lo = s.lo;
    hi = s.hi;
  }
  for (const Atom& a : atoms_) {
    lo = std::min(lo, a.location);
    hi = std::max(hi, a.location);
  }
  return {lo, hi};
}

std::string BaseMeasure::describe() const {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  if (diffuse_) {
    if (diffuse_weight_ != 1.0) os << diffuse_weight_ << "*";
    os << (diffuse_->family == DiffuseFamily::uniform ? "Uniform(" : "Beta(") << diffuse_->a << ","
       << diffuse_->b << ")";
    first = false;
  }
  for (const Atom& a : atoms_) {
    if (!first) os << " + ";
    os << a.prob << "*delta(" << a.location << ")";
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// ShapeMeasure

ShapeMeasure::ShapeMeasure(double theta, BaseMeasure base)
    : ShapeMeasure(theta, std::move(base), {}) {}

ShapeMeasure::ShapeMeasure(double theta, BaseMeasure base, std::vector<std::pair<double, int>> counts)
    : prior_theta_(theta), prior_base_(base), counts_(std::move(counts)), base_(std::move(base)) {
  if (!(theta > 0.0) || !std::isfinite(theta)) throw std::invalid_argument("ShapeMeasure: theta must be positive");
  rebuild();
}

void ShapeMeasure::rebuild() {
  n_obs_ = 0;
  for (const auto& [y, c] : counts_) n_obs_ += c;
  std::map<double, double> merged;
  for (const Atom& a : prior_base_.atoms()) merged[a.location] += prior_theta_ * a.prob;
  for (const auto& [y, c] : counts_) merged[y] += static_cast<double>(c);
  masses_.clear();
  for (const auto& [y, m] : merged) masses_.push_back({y, m});
  if (n_obs_ == 0) {
    base_ = prior_base_;
    return;
  }
  const double total = theta();
  std::vector<Atom> atoms;
  atoms.reserve(masses_.size());
  double atom_sum = 0.0;
  for (const PointMass& pm : masses_) {
    atoms.push_back({pm.location, pm.mass / total});
    atom_sum += pm.mass / total;
  }
  if (prior_base_.diffuse()) {
    // The diffuse weight absorbs rounding so the normalization holds exactly.
    const double w = std::max(1.0 - atom_sum, std::numeric_limits<double>::min());
    base_ = BaseMeasure(prior_base_.diffuse(), w, std::move(atoms));
  } else {
    for (Atom& a : atoms) a.prob /= atom_sum;
    base_ = BaseMeasure(std::nullopt, 0.0, std::move(atoms));
  }
}

ShapeMeasure posterior_shape(const ShapeMeasure& shape, std::span<const double> values) {
  if (values.empty()) return shape;
  std::map<double, int> counts(shape.counts_.begin(), shape.counts_.end());
  for (double y : values) {
    if (!std::isfinite(y)) throw std::invalid_argument("posterior_shape: observations must be finite");
    ++counts[y];
  }
  return ShapeMeasure(shape.prior_theta_, shape.prior_base_,
                      std::vector<std::pair<double, int>>(counts.begin(), counts.end()));
}

ShapeMeasure posterior_shape(const ShapeMeasure& shape, const ObservationSet& obs) {
  return posterior_shape(shape, std::span<const double>(obs.values()));
}

// ---------------------------------------------------------------------------
// Functional

Functional Functional::identity() { return Functional{}; }

Functional Functional::indicator(double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("Functional::indicator: needs lo < hi");
  Functional f;
  f.kind_ = Kind::indicator;
  f.params_ = {lo, hi};
  return f;
}

Functional Functional::affine(double slope, double intercept) {
  Functional f;
  f.kind_ = Kind::affine;
  f.params_ = {slope, intercept};
  return f;
}

Functional Functional::constant(double c) { return affine(0.0, c); }

Functional Functional::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("Functional::polynomial: needs at least one coefficient");
  Functional f;
  f.kind_ = Kind::polynomial;
  f.params_ = std::move(coeffs);
  return f;
}

Functional Functional::table(std::vector<double> breakpoints, std::vector<double> values) {
  if (values.size() != breakpoints.size() + 1) {
    throw std::invalid_argument("Functional::table: needs one more value than breakpoints");
  }
  if (!std::is_sorted(breakpoints.begin(), breakpoints.end()) ||
      std::adjacent_find(breakpoints.begin(), breakpoints.end()) != breakpoints.end()) {
    throw std::invalid_argument("Functional::table: breakpoints must be strictly increasing");
  }
  Functional f;
  f.kind_ = Kind::table;
  f.params_ = std::move(breakpoints);
  f.values_ = std::move(values);
  return f;
}

Functional Functional::combination(std::vector<Term> terms) {
  if (terms.empty()) throw std::invalid_argument("Functional::combination: needs at least one term");
  Functional f;
  f.kind_ = Kind::combination;
  f.terms_ = std::move(terms);
  return f;
}

Functional Functional::with_range(double lo, double hi) const {
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("Functional::with_range: needs finite lo <= hi");
  }
  Functional f = *this;
  f.declared_ = Interval{lo, hi};
  return f;
}

double Functional::operator()(double y) const {
  switch (kind_) {
    case Kind::identity:
      return y;
    case Kind::indicator:
      return (y >= params_[0] && y < params_[1]) ? 1.0 : 0.0;
    case Kind::affine:
      return params_[0] * y + params_[1];
    case Kind::polynomial: {
      double s = 0.0;
      for (auto it = params_.rbegin(); it != params_.rend(); ++it) s = s * y + *it;
      return s;
    }
    case Kind::table: {
      const auto it = std::upper_bound(params_.begin(), params_.end(), y);
      return values_[static_cast<std::size_t>(it - params_.begin())];
    }
    case Kind::combination: {
      double s = 0.0;
      for (const Term& t : terms_) s += t.coef * t.g(y);
      return s;
    }
  }
  return 0.0;
}

Interval Functional::bounds_on(Interval x) const {
  switch (kind_) {
    case Kind::identity:
      return x;
    case Kind::indicator: {
      const bool any_in = x.hi >= params_[0] && x.lo < params_[1];
      const bool any_out = x.lo < params_[0] || x.hi >= params_[1];
      return {any_out ? 0.0 : 1.0, any_in ? 1.0 : 0.0};
    }
    case Kind::affine: {
      const double u = (*this)(x.lo);
      const double v = (*this)(x.hi);
      return {std::min(u, v), std::max(u, v)};
    }
    case Kind::polynomial: {
      double lo = std::min((*this)(x.lo), (*this)(x.hi));
      double hi = std::max((*this)(x.lo), (*this)(x.hi));
      if (params_.size() <= 2 || x.lo == x.hi) return {lo, hi};
      // Interior extrema sit at sign changes of the derivative.
      std::vector<double> d(params_.size() - 1);
      for (std::size_t k = 1; k < params_.size(); ++k) d[k - 1] = static_cast<double>(k) * params_[k];
      auto deriv = [&](double y) {
        double s = 0.0;
        for (auto it = d.rbegin(); it != d.rend(); ++it) s = s * y + *it;
        return s;
      };
      constexpr int kScan = 4096;
      double prev_y = x.lo;
      double prev_d = deriv(prev_y);
      for (int i = 1; i <= kScan; ++i) {
        const double y = x.lo + (x.hi - x.lo) * i / kScan;
        const double dy = deriv(y);
        if (dy == 0.0 || (prev_d < 0.0) != (dy < 0.0)) {
          double a = prev_y, b = y;
          for (int it = 0; it < 200 && b - a > 0.0; ++it) {
            const double mid = 0.5 * (a + b);
            if (mid == a || mid == b) break;
            if ((deriv(mid) < 0.0) == (prev_d < 0.0)) a = mid; else b = mid;
          }
          for (double c : {a, b}) {
            lo = std::min(lo, (*this)(c));
            hi = std::max(hi, (*this)(c));
          }
        }
        prev_y = y;
        prev_d = dy;
      }
      return {lo, hi};
    }
    case Kind::table: {
      const auto first = std::upper_bound(params_.begin(), params_.end(), x.lo) - params_.begin();
      const auto last = std::upper_bound(params_.begin(), params_.end(), x.hi) - params_.begin();
      const auto [mn, mx] = std::minmax_element(values_.begin() + first, values_.begin() + last + 1);
      return {*mn, *mx};
    }
    case Kind::combination: {
      double lo = 0.0, hi = 0.0;
      for (const Term& t : terms_) {
        const Interval b = t.g.bounds_on(x);
        lo += t.coef >= 0.0 ? t.coef * b.lo : t.coef * b.hi;
        hi += t.coef >= 0.0 ? t.coef * b.hi : t.coef * b.lo;
      }
      return {lo, hi};
    }
  }
  return x;
}

Interval Functional::range_on(const BaseMeasure& h) const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  if (h.diffuse()) {
    const Interval b = bounds_on(h.diffuse()->support());
    lo = b.lo;
    hi = b.hi;
  }
  for (const Atom& a : h.atoms()) {
    const double v = (*this)(a.location);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const Interval computed{lo, hi};
  if (!declared_) return computed;
  if (!declared_->contains(computed)) {
    throw std::invalid_argument("Functional: declared range [" + fmt_double(declared_->lo) + ", " +
                                fmt_double(declared_->hi) + "] does not cover g on the support of " +
                                h.describe());
  }
  return *declared_;
}

std::vector<double> Functional::breakpoints() const {
  std::vector<double> out;
  switch (kind_) {
    case Kind::indicator:
    case Kind::table:
      out = params_;
      break;
    case Kind::combination:
      for (const Term& t : terms_) {
        const auto b = t.g.breakpoints();
        out.insert(out.end(), b.begin(), b.end());
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      break;
    default:
      break;
  }
  return out;
}

std::vector<double> Functional::sign_changes(Interval x) const {
  std::vector<double> out;
  if (kind_ == Kind::indicator || kind_ == Kind::table || !(x.lo < x.hi)) return out;
  constexpr int kScan = 4096;
  double prev_y = x.lo;
  double prev_v = (*this)(prev_y);
  for (int i = 1; i <= kScan; ++i) {
    const double y = i == kScan ? x.hi : x.lo + (x.hi - x.lo) * i / kScan;
    const double v = (*this)(y);
    if ((prev_v < 0.0 && v > 0.0) || (prev_v > 0.0 && v < 0.0)) {
      double a = prev_y, b = y;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        if (mid == a || mid == b) break;
        if (((*this)(mid) < 0.0) == (prev_v < 0.0)) a = mid; else b = mid;
      }
      out.push_back(0.5 * (a + b));
    }
    // An exact zero on the grid is itself the crossing point.
    if (v == 0.0 && prev_v != 0.0) out.push_back(y);
    prev_y = y;
    prev_v = v;
  }
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string Functional::describe() const {
  std::ostringstream os;
  os.precision(17);
  auto list = [&](const std::vector<double>& v) {
    os << "[";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << "]";
  };
  switch (kind_) {
    case Kind::identity:
      os << "identity";
      break;
    case Kind::indicator:
      os << "indicator[" << params_[0] << "," << params_[1] << ")";
      break;
    case Kind::affine:
      os << "affine(" << params_[0] << "*y+" << params_[1] << ")";
      break;
    case Kind::polynomial:
      os << "polynomial";
      list(params_);
      break;
    case Kind::table:
      os << "table";
      list(params_);
      list(values_);
      break;
    case Kind::combination:
      for (std::size_t i = 0; i < terms_.size(); ++i) {
        os << (i ? " + " : "") << terms_[i].coef << "*" << terms_[i].g.describe();
      }
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Realizations, partitions, observations

void RandomMeasureRealization::validate() const {
  double sum = 0.0;
  for (const WeightedAtom& a : atoms) {
    if (!(a.weight > 0.0)) throw std::logic_error("realization: weights must be positive");
    sum += a.weight;
  }
  if (normalized) {
    if (std::fabs(sum - 1.0) > truncation_bound + 1e-12) {
      throw std::logic_error("realization: normalized weights do not sum to one");
    }
  } else if (std::fabs(total_mass - sum) > 1e-12 * std::max(1.0, std::fabs(total_mass))) {
    throw std::logic_error("realization: total mass differs from the weight sum");
  }
}

Partition::Partition(std::vector<std::vector<int>> cells) : cells_(std::move(cells)) {
  std::erase_if(cells_, [](const std::vector<int>& c) { return c.empty(); });
  for (auto& c : cells_) std::sort(c.begin(), c.end());
  std::sort(cells_.begin(), cells_.end(),
            [](const std::vector<int>& x, const std::vector<int>& y) { return x.front() < y.front(); });
  for (const auto& c : cells_) n_ += static_cast<int>(c.size());
  std::vector<char> seen(static_cast<std::size_t>(n_), 0);
  for (const auto& c : cells_) {
    for (int i : c) {
      if (i < 0 || i >= n_ || seen[static_cast<std::size_t>(i)]) {
        throw std::invalid_argument("Partition: cells must be disjoint and cover {0..n-1}");
      }
      seen[static_cast<std::size_t>(i)] = 1;
    }
  }
}

Partition Partition::from_labels(std::span<const int> labels) {
  std::map<int, std::vector<int>> by_label;
  for (std::size_t i = 0; i < labels.size(); ++i) by_label[labels[i]].push_back(static_cast<int>(i));
  std::vector<std::vector<int>> cells;
  cells.reserve(by_label.size());
  for (auto& [label, members] : by_label) cells.push_back(std::move(members));
  return Partition(std::move(cells));
}

std::vector<int> Partition::sizes() const {
  std::vector<int> s;
  s.reserve(cells_.size());
  for (const auto& c : cells_) s.push_back(static_cast<int>(c.size()));
  return s;
}

ObservationSet::ObservationSet(std::vector<double> values) : values_(std::move(values)) {
  std::vector<int> labels(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const auto it = std::find(uniques_.begin(), uniques_.end(), values_[i]);
    labels[i] = static_cast<int>(it - uniques_.begin());
    if (it == uniques_.end()) uniques_.push_back(values_[i]);
  }
  partition_ = Partition::from_labels(labels);
}

// ---------------------------------------------------------------------------
// Integration

namespace {

// ∫_{piece} t^(al-1) (1-t)^(be-1) f(t) dt / B(al, be) for a piece [t1, t2]
// of [0, 1], fixed Gauss rules with the endpoint singularity in the weight.
double beta_piece_fixed(double al, double be, double t1, double t2, const std::function<double(double)>& f,
                        double log_b) {
  const int m = kDiffuseOrder;
  if (t1 == 0.0 && t2 == 1.0) {
    return jacobi_rule(al, be, m)->integrate(f);
  }
  if (t1 == 0.0) {
    const auto rule = jacobi_rule(al, 1.0, m);
    const double scale = std::exp(al * std::log(t2) - log_b) / al;
    return scale * rule->integrate([&](double s) {
      const double t = t2 * s;
      return std::pow(1.0 - t, be - 1.0) * f(t);
    });
  }
  if (t2 == 1.0) {
    const auto rule = jacobi_rule(be, 1.0, m);
    const double w = 1.0 - t1;
    const double scale = std::exp(be * std::log(w) - log_b) / be;
    return scale * rule->integrate([&](double s) {
      const double t = 1.0 - w * s;
      return std::pow(t, al - 1.0) * f(t);
    });
  }
  const auto rule = jacobi_rule(1.0, 1.0, m);
  const double w = t2 - t1;
  return w * rule->integrate([&](double s) {
    const double t = t1 + w * s;
    return std::exp((al - 1.0) * std::log(t) + (be - 1.0) * std::log1p(-t) - log_b) * f(t);
  });
}

// Adaptive counterpart: pieces touching 0 (or 1) use t = t2 s^(1/al) (or the
// mirror), which turns t^(al-1) dt into a constant times ds.
double beta_piece_adaptive(double al, double be, double t1, double t2, const std::function<double(double)>& f,
                           double log_b) {
  if (t1 == 0.0 && t2 == 1.0) {
    return beta_piece_adaptive(al, be, 0.0, 0.5, f, log_b) + beta_piece_adaptive(al, be, 0.5, 1.0, f, log_b);
  }
  if (t1 == 0.0 && al != 1.0) {
    const double scale = std::exp(al * std::log(t2) - log_b) / al;
    return scale * integrate_adaptive(
                       [&](double s) {
                         const double t = t2 * std::pow(s, 1.0 / al);
                         return std::pow(1.0 - t, be - 1.0) * f(t);
                       },
                       0.0, 1.0);
  }
  if (t2 == 1.0 && be != 1.0) {
    const double w = 1.0 - t1;
    const double scale = std::exp(be * std::log(w) - log_b) / be;
    return scale * integrate_adaptive(
                       [&](double s) {
                         const double t = 1.0 - w * std::pow(s, 1.0 / be);
                         return std::pow(t, al - 1.0) * f(t);
                       },
                       0.0, 1.0);
  }
  return integrate_adaptive(
      [&](double t) {
        return std::exp((al - 1.0) * std::log(t) + (be - 1.0) * std::log1p(-t) - log_b) * f(t);
      },
      t1, t2);
}

}  // namespace

double expect_diffuse(const DiffusePart& part, const std::function<double(double)>& f,
                      std::span<const double> breakpoints, QuadMethod method) {
  const Interval s = part.support();
  const double width = s.hi - s.lo;
  const auto [al, be] = part.unit_shapes();
  const double log_b = log_beta(al, be);
  auto g = [&](double t) { return f(s.lo + width * t); };

  std::vector<double> cuts{0.0};
  for (double b : breakpoints) {
    const double t = (b - s.lo) / width;
    if (t > 0.0 && t < 1.0) cuts.push_back(t);
  }
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += method == QuadMethod::fixed ? beta_piece_fixed(al, be, cuts[i], cuts[i + 1], g, log_b)
                                         : beta_piece_adaptive(al, be, cuts[i], cuts[i + 1], g, log_b);
  }
  return total;
}

double expect_base(const BaseMeasure& h, const std::function<double(double)>& f,
                   std::span<const double> breakpoints, QuadMethod method) {
  double total = 0.0;
  for (const Atom& a : h.atoms()) total += a.prob * f(a.location);
  if (h.diffuse()) total += h.diffuse_weight() * expect_diffuse(*h.diffuse(), f, breakpoints, method);
  return total;
}

double integrate_shape(const ShapeMeasure& shape, const std::function<double(double)>& f,
                       std::span<const double> breakpoints, QuadMethod method) {
  double total = 0.0;
  for (const PointMass& pm : shape.point_masses()) total += pm.mass * f(pm.location);
  const auto& prior = shape.prior_base();
  if (prior.diffuse()) total += shape.diffuse_mass() * expect_diffuse(*prior.diffuse(), f, breakpoints, method);
  return total;
}

double integrability_value(const ShapeMeasure& shape, const Functional& g, QuadMethod method) {
  // |g| has a kink wherever g changes sign.
  auto bp = g.breakpoints();
  if (const auto& d = shape.prior_base().diffuse()) {
    const auto roots = g.sign_changes(d->support());
    bp.insert(bp.end(), roots.begin(), roots.end());
    std::sort(bp.begin(), bp.end());
  }
  return integrate_shape(
      shape, [&](double y) { return std::log1p(std::fabs(g(y))); }, bp, method);
}

double functional_eval(const RandomMeasureRealization& m, const Functional& g) {
  double s = 0.0;
  for (const WeightedAtom& a : m.atoms) s += a.weight * g(a.location);
  return s;
}

}  // namespace dpf
