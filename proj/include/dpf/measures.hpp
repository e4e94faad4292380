#ifndef DPF_MEASURES_HPP_
#define DPF_MEASURES_HPP_

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dpf {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool operator==(const Interval&) const = default;
};

enum class DiffuseFamily { uniform, beta };

/// Continuous component of a base measure. For `uniform`, (a, b) are the
/// interval ends; for `beta`, (a, b) are the shape parameters on [0, 1].
struct DiffusePart {
  DiffuseFamily family = DiffuseFamily::uniform;
  double a = 0.0;
  double b = 1.0;

  Interval support() const;
  double cdf(double y) const;
  /// Shapes of the Beta law after mapping the support onto [0, 1].
  std::pair<double, double> unit_shapes() const;
  bool operator==(const DiffusePart&) const = default;
};

struct Atom {
  double location = 0.0;
  double prob = 0.0;
  bool operator==(const Atom&) const = default;
};

/// A probability measure H on the real line: an optional diffuse family with
/// weight w_c plus finitely many atoms, w_c + sum(probs) = 1.
class BaseMeasure {
 public:
  BaseMeasure(std::optional<DiffusePart> diffuse, double diffuse_weight, std::vector<Atom> atoms);

  static BaseMeasure uniform(double lo, double hi);
  static BaseMeasure beta(double a, double b);
  /// Beta(1/2, 1/2).
  static BaseMeasure arcsine();
  static BaseMeasure dirac(double x);
  static BaseMeasure discrete(std::vector<Atom> atoms);

  const std::optional<DiffusePart>& diffuse() const { return diffuse_; }
  double diffuse_weight() const { return diffuse_weight_; }
  /// Sorted by location.
  const std::vector<Atom>& atoms() const { return atoms_; }

  bool nonatomic() const { return atoms_.empty(); }
  bool purely_atomic() const { return !diffuse_; }
  Interval support_hull() const;
  std::string describe() const;

  bool operator==(const BaseMeasure&) const = default;

 private:
  std::optional<DiffusePart> diffuse_;
  double diffuse_weight_ = 0.0;
  std::vector<Atom> atoms_;
};

/// Total mass and location of one point mass of an unnormalized measure.
struct PointMass {
  double location = 0.0;
  double mass = 0.0;
};

/// The shape θH of a Dirichlet or Gamma process, possibly updated by
/// observations: prior_theta * prior_base + sum of counts * δ_y.
///
/// Observation counts are kept as integers apart from the prior, so sequential
/// and batch posterior updates produce identical objects.
class ShapeMeasure {
 public:
  ShapeMeasure(double theta, BaseMeasure base);

  /// Total mass θ + n.
  double theta() const { return prior_theta_ + static_cast<double>(n_obs_); }
  /// Normalized base measure H_n.
  const BaseMeasure& base() const { return base_; }

  double prior_theta() const { return prior_theta_; }
  const BaseMeasure& prior_base() const { return prior_base_; }
  const std::vector<std::pair<double, int>>& observation_counts() const { return counts_; }
  int n_observations() const { return n_obs_; }

  /// θ_total * w_c, the mass of the diffuse component.
  double diffuse_mass() const { return prior_theta_ * prior_base_.diffuse_weight(); }
  /// Unnormalized atom masses, prior atoms merged with observations.
  const std::vector<PointMass>& point_masses() const { return masses_; }

  bool operator==(const ShapeMeasure& o) const {
    return prior_theta_ == o.prior_theta_ && prior_base_ == o.prior_base_ && counts_ == o.counts_;
  }

 private:
  friend ShapeMeasure posterior_shape(const ShapeMeasure&, std::span<const double>);
  ShapeMeasure(double theta, BaseMeasure base, std::vector<std::pair<double, int>> counts);
  void rebuild();

  double prior_theta_;
  BaseMeasure prior_base_;
  std::vector<std::pair<double, int>> counts_;  // sorted by location
  int n_obs_ = 0;
  BaseMeasure base_;
  std::vector<PointMass> masses_;
};

/// A bounded real function on the support. Piecewise-constant kinds use
/// half-open cells: indicator(lo, hi) is 1 on [lo, hi), and table(b, v) is
/// v[0] below b[0], v[i] on [b[i-1], b[i]), v.back() from b.back() on.
class Functional {
 public:
  enum class Kind { identity, indicator, affine, polynomial, table, combination };

  struct Term;

  static Functional identity();
  static Functional indicator(double lo, double hi);
  /// slope * y + intercept
  static Functional affine(double slope, double intercept);
  static Functional constant(double c);
  /// coeffs[0] + coeffs[1] y + coeffs[2] y^2 + ...
  static Functional polynomial(std::vector<double> coeffs);
  static Functional table(std::vector<double> breakpoints, std::vector<double> values);
  /// Σ coef_i g_i, used for joint functionals.
  static Functional combination(std::vector<Term> terms);

  /// Attaches a declared range; validated against the support when used.
  Functional with_range(double lo, double hi) const;

  double operator()(double y) const;
  Kind kind() const { return kind_; }

  /// Bounds of g over a closed interval. Exact for every kind except
  /// `combination`, for which the bound is the sum of term bounds.
  Interval bounds_on(Interval x) const;
  /// Declared range if one was attached (after checking it covers g on the
  /// support of H), otherwise the computed range over the support of H.
  Interval range_on(const BaseMeasure& h) const;
  const std::optional<Interval>& declared_range() const { return declared_; }

  /// Discontinuity locations of g.
  std::vector<double> breakpoints() const;
  /// Points in x where g crosses zero; empty for piecewise-constant kinds,
  /// whose crossings are among the breakpoints.
  std::vector<double> sign_changes(Interval x) const;
  std::string describe() const;

  const std::vector<double>& params() const { return params_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<Term>& terms() const { return terms_; }

 private:
  Kind kind_ = Kind::identity;
  std::vector<double> params_;
  std::vector<double> values_;
  std::vector<Term> terms_;
  std::optional<Interval> declared_;
};

struct Functional::Term {
  double coef = 1.0;
  Functional g;
};

struct WeightedAtom {
  double location = 0.0;
  double weight = 0.0;
};

/// Finite atomic approximation of P, μ or a Beta-Gamma process.
struct RandomMeasureRealization {
  std::vector<WeightedAtom> atoms;
  double total_mass = 0.0;
  bool normalized = true;
  /// Upper bound on the expected mass fraction lost to truncation.
  double truncation_bound = 0.0;

  /// Throws std::logic_error if an invariant does not hold.
  void validate() const;
};

/// A set partition of {0, ..., n-1}. Stored in canonical form: each cell
/// sorted, cells ordered by their smallest element.
class Partition {
 public:
  explicit Partition(std::vector<std::vector<int>> cells);
  /// Cell label per element; equal labels share a cell.
  static Partition from_labels(std::span<const int> labels);

  int n() const { return n_; }
  /// n(p), the number of cells.
  int count() const { return static_cast<int>(cells_.size()); }
  std::vector<int> sizes() const;
  const std::vector<std::vector<int>>& cells() const { return cells_; }

  bool operator==(const Partition&) const = default;
  auto operator<=>(const Partition&) const = default;

 private:
  std::vector<std::vector<int>> cells_;
  int n_ = 0;
};

/// Observed values Y_1..Y_n with their distinct values (first-appearance
/// order) and the partition induced by bitwise equality.
class ObservationSet {
 public:
  ObservationSet() = default;
  explicit ObservationSet(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& uniques() const { return uniques_; }
  /// e_j for each unique value, aligned with uniques().
  std::vector<int> multiplicities() const { return partition_.sizes(); }
  const Partition& partition() const { return partition_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

 private:
  std::vector<double> values_;
  std::vector<double> uniques_;
  Partition partition_{std::vector<std::vector<int>>{}};
};

// ---------------------------------------------------------------------------
// Integration against base and shape measures.

enum class QuadMethod { fixed, adaptive };

/// Nodes per smooth piece of a diffuse integral.
inline constexpr int kDiffuseOrder = 256;

/// ∫ f dH_c over the normalized diffuse component. `breakpoints` split the
/// support into pieces on which f is smooth; endpoint singularities of the
/// Beta density are handled by Gauss-Jacobi weights (fixed) or a
/// singularity-removing substitution (adaptive).
double expect_diffuse(const DiffusePart& part, const std::function<double(double)>& f,
                      std::span<const double> breakpoints, QuadMethod method = QuadMethod::fixed);

/// ∫ f dH.
double expect_base(const BaseMeasure& h, const std::function<double(double)>& f,
                   std::span<const double> breakpoints, QuadMethod method = QuadMethod::fixed);

/// ∫ f d(θH), unnormalized.
double integrate_shape(const ShapeMeasure& shape, const std::function<double(double)>& f,
                       std::span<const double> breakpoints, QuadMethod method = QuadMethod::fixed);

// ---------------------------------------------------------------------------
// Operations.

/// θH + Σ δ_{Y_i}, total mass θ + n.
ShapeMeasure posterior_shape(const ShapeMeasure& shape, std::span<const double> values);
ShapeMeasure posterior_shape(const ShapeMeasure& shape, const ObservationSet& obs);

/// ∫ log(1 + |g(y)|) θH(dy); finite for every bounded g.
double integrability_value(const ShapeMeasure& shape, const Functional& g,
                           QuadMethod method = QuadMethod::fixed);

/// Σ weight_i g(location_i).
double functional_eval(const RandomMeasureRealization& m, const Functional& g);

}  // namespace dpf

#endif  // DPF_MEASURES_HPP_
