#include "dpf/checks.hpp"

#include "dpf/ks.hpp"
#include "dpf/montecarlo.hpp"
#include "dpf/quadrature.hpp"
#include "dpf/samplers.hpp"
#include "dpf/special.hpp"
#include "dpf/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace dpf {

namespace {

constexpr double kMcSigmas = 3.0;
constexpr double kMomentSigmas = 4.0;
constexpr double kEpsAllowance = 10.0;
constexpr double kExactTol = 1e-8;
constexpr std::int64_t kMinKsSamples = 10000;

// ---------------------------------------------------------------------------
// Grid points.

GridPoint point(std::string label, std::string kind, double lhs, double rhs, double se) {
  GridPoint p;
  p.label = std::move(label);
  p.kind = std::move(kind);
  p.lhs = lhs;
  p.rhs = rhs;
  p.se = se;
  return p;
}

GridPoint finish(GridPoint p) {
  p.pass = std::isfinite(p.deviation) && p.deviation <= p.tolerance;
  return p;
}

GridPoint mc_point(std::string label, double lhs, double rhs, double se, double eps) {
  GridPoint p = point(std::move(label), "mc", lhs, rhs, se);
  p.tolerance = kMcSigmas * se + kEpsAllowance * eps;
  p.deviation = std::fabs(lhs - rhs);
  p.rule = "|lhs - rhs| <= 3*se + 10*eps";
  return finish(p);
}

GridPoint mc2_point(std::string label, const McEstimate& a, const McEstimate& b, double eps) {
  GridPoint p = mc_point(std::move(label), a.mean, b.mean, std::hypot(a.std_error, b.std_error), eps);
  p.kind = "mc2";
  p.rule = "|lhs - rhs| <= 3*sqrt(se_lhs^2 + se_rhs^2) + 10*eps";
  return p;
}

GridPoint moment_point(std::string label, double lhs, double rhs, double se, double eps) {
  GridPoint p = point(std::move(label), "moment", lhs, rhs, se);
  p.tolerance = kMomentSigmas * se + kEpsAllowance * eps;
  p.deviation = std::fabs(lhs - rhs);
  p.rule = "|lhs - rhs| <= 4*se + 10*eps";
  return finish(p);
}

double mean_of(const std::vector<double>& xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

GridPoint ks_point(std::string label, const std::vector<double>& xs, const std::vector<double>& ys) {
  GridPoint p = point(std::move(label), "ks", mean_of(xs), mean_of(ys), 0.0);
  p.deviation = ks_two_sample(xs, ys);
  p.tolerance = ks_threshold_two_sample(xs.size(), ys.size(), kKsCoef999);
  p.rule = "D < 1.95*sqrt((n1 + n2)/(n1*n2))";
  p.pass = p.deviation < p.tolerance;
  return p;
}

GridPoint ks1_point(std::string label, const std::vector<double>& xs, const std::function<double(double)>& cdf,
                    double law_mean) {
  GridPoint p = point(std::move(label), "ks1", mean_of(xs), law_mean, 0.0);
  p.deviation = ks_vs_cdf(xs, cdf);
  p.tolerance = ks_threshold_one_sample(xs.size(), kKsCoef999);
  p.rule = "D < 1.95/sqrt(n)";
  p.pass = p.deviation < p.tolerance;
  return p;
}

GridPoint exact_point(std::string label, double lhs, double rhs, double tol, bool relative) {
  GridPoint p = point(std::move(label), "exact", lhs, rhs, 0.0);
  p.tolerance = relative ? tol * std::fabs(rhs) : tol;
  p.deviation = std::fabs(lhs - rhs);
  std::ostringstream rule;
  rule << "|lhs - rhs| <= " << tol << (relative ? "*|rhs|" : "");
  p.rule = rule.str();
  return finish(p);
}

McEstimate moments_of(const std::vector<double>& xs, const std::function<double(double)>& f) {
  StreamingMoments m;
  for (double x : xs) m.add(f(x));
  return {m.mean(), m.std_error(), m.count(), 0, {}};
}

std::string z_label(double z) {
  std::ostringstream os;
  os << "z=" << z;
  return os.str();
}

// ---------------------------------------------------------------------------
// Parameters shared by every check.

struct Common {
  std::uint64_t seed = 0;
  std::int64_t n_samples = 100000;
  std::int64_t chunk_size = 10000;
  double eps = kDefaultEps;
  int quad_order = kDefaultQuadOrder;
  double rhs_offset = 0.0;

  McOptions mc(const RunContext& ctx) const { return {n_samples, chunk_size, ctx.jobs, eps}; }
};

Common read_common(ParamReader& r, const CheckDefaults& d, std::uint64_t seed, std::int64_t n_default,
                   bool uses_ks = false) {
  Common c;
  c.seed = r.seed("seed", seed);
  c.n_samples = r.integer("n_samples", d.n_samples.value_or(n_default));
  r.require(c.n_samples >= 1, "n_samples", "n_samples >= 1");
  if (uses_ks) r.require(c.n_samples >= kMinKsSamples, "n_samples", "n_samples >= 10000 for KS comparisons");
  c.chunk_size = r.integer("chunk_size", d.chunk_size.value_or(10000));
  r.require(c.chunk_size >= 1, "chunk_size", "chunk_size >= 1");
  c.eps = r.number("eps", d.eps.value_or(kDefaultEps));
  r.require(c.eps > 0.0 && c.eps < 1.0, "eps", "0 < eps < 1");
  c.quad_order = static_cast<int>(r.integer("quad_order", d.quad_order.value_or(kDefaultQuadOrder)));
  r.require(c.quad_order >= 1 && c.quad_order <= 4096, "quad_order", "1 <= quad_order <= 4096");
  c.rhs_offset = r.number("rhs_offset", 0.0);
  return c;
}

void write_common(Json& j, const Common& c) {
  j["seed"] = c.seed;
  j["n_samples"] = c.n_samples;
  j["chunk_size"] = c.chunk_size;
  j["eps"] = c.eps;
  j["quad_order"] = c.quad_order;
  j["rhs_offset"] = c.rhs_offset;
}

Json bernoulli_json() { return {{"family", "discrete"}, {"atoms", {{0.0, 0.5}, {1.0, 0.5}}}}; }
Json uniform_json() { return {{"family", "uniform"}, {"lo", 0.0}, {"hi", 1.0}}; }
Json arcsine_json() { return {{"family", "arcsine"}}; }
Json identity_json() { return {{"kind", "identity"}}; }

BaseMeasure read_base(ParamReader& r, const Json& fallback) {
  return base_from_json(r.raw("base", fallback), r.field("base"));
}

Functional read_g(ParamReader& r, const Json& fallback) {
  return functional_from_json(r.raw("g", fallback), r.field("g"));
}

double read_theta(ParamReader& r, double fallback) {
  const double theta = r.number("theta", fallback);
  r.require(theta > 0.0, "theta", "theta > 0");
  return theta;
}

std::vector<double> read_z_grid(ParamReader& r, const CheckDefaults& d, std::vector<double> fallback) {
  auto zs = r.numbers("z_grid", d.z_grid.value_or(std::move(fallback)));
  r.require(!zs.empty(), "z_grid", "a nonempty z grid");
  for (double z : zs) r.require(z >= 0.0, "z_grid", "z >= 0 at every grid point");
  return zs;
}

/// Fails fast when 1 + z g > 0 does not hold on the support for some z.
void require_kernel(ParamReader& r, const BaseMeasure& h, const Functional& g, const std::vector<double>& zs,
                    const std::string& key = "z_grid") {
  for (double z : zs) {
    try {
      require_positive_kernel(h, g, z);
    } catch (const std::exception& e) {
      throw ConfigError(r.field(key) + ": requires 1 + z*g(y) > 0 on the support of H (" + e.what() + ")");
    }
  }
}

// ---------------------------------------------------------------------------
// Registration helper: a check is a params type P with parse, to_json and run.

template <class P>
CheckInfo make_check(std::string name, std::string citation,
                     std::function<P(ParamReader&, const CheckDefaults&, std::uint64_t)> parse,
                     std::function<Json(const P&)> to_json,
                     std::function<std::vector<GridPoint>(const P&, const RunContext&)> run) {
  CheckInfo info;
  info.name = name;
  info.citation = citation;
  info.resolve = [parse, to_json](const Json& params, const CheckDefaults& d, std::uint64_t seed,
                                  const std::string& path) {
    const Json obj = params.is_null() ? Json::object() : params;
    ParamReader r(obj, path);
    const P p = parse(r, d, seed);
    r.finish();
    return to_json(p);
  };
  info.run = [name, citation, parse, run](const Json& resolved, const RunContext& ctx) {
    ParamReader r(resolved, "params");
    const P p = parse(r, CheckDefaults{}, 0);
    r.finish();
    CheckReport rep;
    rep.name = name;
    rep.citation = citation;
    rep.params = resolved;
    rep.points = run(p, ctx);
    rep.pass = !rep.points.empty() &&
               std::all_of(rep.points.begin(), rep.points.end(), [](const GridPoint& g) { return g.pass; });
    return rep;
  };
  return info;
}

// ---------------------------------------------------------------------------
// Transform checks.

struct TransformParams {
  Common c;
  double theta = 1.0;
  double q = 1.0;
  BaseMeasure base = BaseMeasure::uniform(0.0, 1.0);
  Functional g;
  std::vector<double> zs;
};

Json transform_json(const TransformParams& p, bool with_q) {
  Json j;
  write_common(j, p.c);
  j["theta"] = p.theta;
  if (with_q) j["q"] = p.q;
  j["base"] = base_to_json(p.base);
  j["g"] = functional_to_json(p.g);
  j["z_grid"] = p.zs;
  return j;
}

CheckInfo check_eq2() {
  using P = TransformParams;
  return make_check<P>(
      "check_eq2", "Markov-Krein identity: E[(1 + z P(g))^-theta] = E[exp(-z mu(g))] = exp(-psi(z))",
      [](ParamReader& r, const CheckDefaults& d, std::uint64_t seed) {
        P p;
        p.c = read_common(r, d, seed, 1000000);
        p.theta = read_theta(r, 1.0);
        p.q = p.theta;
        p.base = read_base(r, bernoulli_json());
        p.g = read_g(r, identity_json());
        p.zs = read_z_grid(r, d, {0.5, 1.0, 3.0, 10.0});
        require_kernel(r, p.base, p.g, p.zs);
        return p;
      },
      [](const P& p) { return transform_json(p, false); },
      [](const P& p, const RunContext& ctx) {
        const ShapeMeasure shape(p.theta, p.base);
        const auto mc = cs_transform_mc(shape, p.g, p.zs, p.theta, p.c.mc(ctx), RngStream(p.c.seed));
        std::vector<GridPoint> out;
        for (std::size_t i = 0; i < p.zs.size(); ++i) {
          const double rhs = laplace_gamma(shape, p.g, p.zs[i]) + p.c.rhs_offset;
          out.push_back(mc_point(z_label(p.zs[i]), mc[i].mean, rhs, mc[i].std_error, p.c.eps));
        }
        return out;
      });
}

CheckInfo check_eq14() {
  using P = TransformParams;
  return make_check<P>(
      "check_eq14",
      "order-q transform equals the Beta-Gamma Laplace functional: E[(1 + z P(g))^-q] = E[exp(-z mu_{theta,theta-q}(g))]",
      [](ParamReader& r, const CheckDefaults& d, std::uint64_t seed) {
        P p;
        p.c = read_common(r, d, seed, 100000);
        p.theta = read_theta(r, 2.0);
        p.q = r.number("q", 0.5);
        r.require(p.q > 0.0, "q", "q > 0");
        p.base = read_base(r, bernoulli_json());
        p.g = read_g(r, identity_json());
        p.zs = read_z_grid(r, d, {0.5, 1.0, 3.0});
        require_kernel(r, p.base, p.g, p.zs);
        return p;
      },
      [](const P& p) { return transform_json(p, true); },
      [](const P& p, const RunContext& ctx) {
        const ShapeMeasure shape(p.theta, p.base);
        const RngStream rng(p.c.seed);
        const auto cs = cs_transform_mc(shape, p.g, p.zs, p.q, p.c.mc(ctx), rng.child(0));
        const auto bg = bg_laplace_mc(shape, p.theta - p.q, p.g, p.zs, p.c.mc(ctx), rng.child(1));
        const int depth = minimal_depth(p.theta, p.q);
        std::vector<GridPoint> out;
        for (std::size_t i = 0; i < p.zs.size(); ++i) {
          const double z = p.zs[i];
          const std::string zl = z_label(z);
          McEstimate shifted = bg[i];
          shifted.mean += p.c.rhs_offset;
          out.push_back(mc2_point(zl + " transform_mc vs beta_gamma_mc", cs[i], shifted, p.c.eps));
          auto against = [&](const std::string& what, double exact) {
            exact += p.c.rhs_offset;
            out.push_back(mc_point(zl + " transform_mc vs " + what, cs[i].mean, exact, cs[i].std_error, p.c.eps));
            out.push_back(mc_point(zl + " beta_gamma_mc vs " + what, bg[i].mean, exact, bg[i].std_error, p.c.eps));
          };
          if (p.theta > p.q) against("cs_eq15", cs_eq15(shape, p.g, z, p.q, p.c.quad_order));
          if (p.q == 1.0) against("cs_eq17", cs_eq17(shape, p.g, z, p.c.quad_order));
          if (p.q == p.theta) against("laplace_gamma", laplace_gamma(shape, p.g, z));
          if (p.theta <= p.q && shape.base().nonatomic() && depth <= kMaxExactDepth) {
            against("partition_expansion_exact(n=" + std::to_string(depth) + ")",
                    cs_partition_expansion_exact(shape, p.g, z, p.q, depth, p.c.quad_order));
          }
        }
        return out;
      });
}

CheckInfo check_eq15() {
  using P = TransformParams;
  return make_check<P>(
      "check_eq15", "for theta > q: E[(1 + z P(g))^-q] = int exp(-psi(u z)) Beta(du | q, theta - q)",
      [](ParamReader& r, const CheckDefaults& d, std::uint64_t seed) {
        P p;
        p.c = read_common(r, d, seed, 100000);
        p.theta = read_theta(r, 2.0);
        p.q = r.number("q", 1.0);
        r.require(p.q > 0.0, "q", "q > 0");
        r.require(p.theta - p.q > 0.0, "q", "theta - q > 0");
        p.base = read_base(r, bernoulli_json());
        p.g = read_g(r, identity_json());
        p.zs = read_z_grid(r, d, {0.5, 1.0, 3.0});
        require_kernel(r, p.base, p.g, p.zs);
        return p;
      },
      [](const P& p) { return transform_json(p, true); },
      [](const P& p, const RunContext& ctx) {
        const ShapeMeasure shape(p.theta, p.base);
        const auto mc = cs_transform_mc(shape, p.g, p.zs, p.q, p.c.mc(ctx), RngStream(p.c.seed));
        std::vector<GridPoint> out;
        for (std::size_t i = 0; i < p.zs.size(); ++i) {
          const double rhs = cs_eq15(shape, p.g, p.zs[i], p.q, p.c.quad_order) + p.c.rhs_offset;
          out.push_back(mc_point(z_label(p.zs[i]), mc[i].mean, rhs, mc[i].std_error, p.c.eps));
        }
        return out;
      });
}

CheckInfo check_eq17() {
  using P = TransformParams;
  return make_check<P>(
      "check_eq17", "for every theta > 0: E[(1 + z P(g))^-1] = int exp(-psi(u z)) int H(dy)/(1 + u z g(y)) Beta(du | 1, theta)",
      [](ParamReader& r, const CheckDefaults& d, std::uint64_t seed) {
        P p;
        p.c = read_common(r, d, seed, 100000);
        p.theta = read_theta(r, 0.5);
        p.base = read_base(r, bernoulli_json());
        p.g = read_g(r, identity_json());
        p.zs = read_z_grid(r, d, {0.5, 1.0, 3.0});
        require_kernel(r, p.base, p.g, p.zs);
        return p;
      },
      [](const P& p) { return transform_json(p, false); },
      [](const P& p, const RunContext& ctx) {
        const ShapeMeasure shape(p.theta, p.base);
        const auto mc = cs_transform_mc(shape, p.g, p.zs, 1.0, p.c.mc(ctx), RngStream(p.c.seed));
        std::vector<GridPoint> out;
        for (std::size_t i = 0; i < p.zs.size(); ++i) {
          const double rhs = cs_eq17(shape, p.g, p.zs[i], p.c.quad_order) + p.c.rhs_offset;
          out.push_back(mc_point(z_label(p.zs[i]), mc[i].mean, rhs, mc[i].std_error, p.c.eps));
        }
        return out;
      });
}

struct InvarianceParams {
  TransformParams t;
  std::vector<int> depths;
};

CheckInfo check_partition_invariance() {
  using P = InvarianceParams;
  return make_check<P>(
      "check_partition_invariance",
      "partition expansion of E[(1 + z P(g))^-q] gives the same value at every admissible depth n",
      [](ParamReader& r, const CheckDefaults& d, std::uint64_t seed) {
        P p;
        p.t.c = read_common(r, d, seed, 100000);
        p.t.theta = read_theta(r, 0.75);
        p.t.q = r.number("q", 2.0);
        r.require(p.t.q > 0.0, "q", "q > 0");
        p.t.base = read_base(r, uniform_json());
        r.require(p.t.base.nonatomic(), "base", "a nonatomic H for the exact expansion");
        p.t.g = read_g(r, identity_json());
        p.t.zs = read_z_grid(r, d, {1.0});
        require_kernel(r, p.t.base, p.t.g, p.t.zs);
        for (double n : r.numbers("depths", std::vector<double>{2, 3, 4})) {
          r.require(n == std::floor(n) && n >= 0 && n <= kMaxExactDepth, "depths", "integer depths in [0, 10]");
          r.require(p.t.theta + n - p.t.q > 0.0, "depths", "theta + n - q > 0 at every depth");
          p.depths.push_back(static_cast<int>(n));
        }
        r.require(!p.depths.empty(), "depths", "at least one depth");
        return p;
      },
      [](const P& p) {
        Json j = transform_json(p.t, true);
        j["depths"] = p.depths;
        return j;
      },
      [](const P& p, const RunContext& ctx) {
        const auto& t = p.t;
        const ShapeMeasure shape(t.theta, t.base);
        const RngStream rng(t.c.seed);
        const int n0 = p.depths.front();
        const auto cs = cs_transform_mc(shape, t.g, t.zs, t.q, t.c.mc(ctx), rng.child(0));
        const auto pm = partition_expansion_mc(shape, t.g, t.zs, t.q, n0, t.c.quad_order, t.c.mc(ctx), rng.child(1));
        std::vector<GridPoint> out;
        for (std::size_t i = 0; i < t.zs.size(); ++i) {
          const double z = t.zs[i];
          const std::string zl = z_label(z);
          const double ref = cs_partition_expansion_exact(shape, t.g, z, t.q, n0, t.c.quad_order);
          const std::string ref_name = "exact(n=" + std::to_string(n0) + ")";
          for (std::size_t k = 1; k < p.depths.size(); ++k) {
            const double v = cs_partition_expansion_exact(shape, t.g, z, t.q, p.depths[k], t.c.quad_order);
            out.push_back(exact_point(zl + " exact(n=" + std::to_string(p.depths[k]) + ") vs " + ref_name, v,
                                      ref + t.c.rhs_offset, kExactTol, false));
          }
          if (t.theta > t.q) {
            out.push_back(exact_point(zl + " " + ref_name + " vs cs_eq15", ref,
                                      cs_eq15(shape, t.g, z, t.q, t.c.quad_order) + t.c.rhs_offset, kExactTol, false));
          }
          if (t.q == 1.0) {
            out.push_back(exact_point(zl + " " + ref_name + " vs cs_eq17", ref,
                                      cs_eq17(shape, t.g, z, t.c.quad_order) + t.c.rhs_offset, kExactTol, false));
          }
          out.push_back(mc_point(zl + " transform_mc vs " + ref_name, cs[i].mean, ref + t.c.rhs_offset,
                                 cs[i].std_error, t.c.eps));
          out.push_back(mc_point(zl + " urn_mc(n=" + std::to_string(n0) + ") vs " + ref_name, pm[i].mean,
                                 ref + t.c.rhs_offset, pm[i].std_error, t.c.eps));
        }
        return out;
      });
}

// ---------------------------------------------------------------------------
// Posterior checks.

struct Eq10Params {
  Common c;
  double theta = 1.0;
  double d = 0.0;
  int n = 1;
  BaseMeasure base = BaseMeasure::uniform(0.0, 1.0);
  Functional g;
  std::vector<double> zs;
};

CheckInfo check_eq10() {
  using P = Eq10Params;
  return make_check<P>(
      "check_eq10",
      "posterior of mu ~ BG(theta H, d) given n urn draws is BG((theta+n) H_n, n+d)",
      [](ParamReader& r, const CheckDefaults& dd, std::uint64_t seed) {
        P p;
        p.c = read_common(r, dd, seed, 100000);
        p.theta = read_theta(r, 1.0);
        p.d = r.number("d", 0.0);
        r.require(p.theta - p.d > 0.0, "d", "theta - d > 0");
        const auto n = r.integer("n", 1);
        r.require(n >= 0 && n <= 1000, "n", "0 <= n <= 1000");
        p.n = static_cast<int>(n);
        r.require(p.n + p.d >= 0.0, "n", "n + d >= 0");
        p.base = read_base(r, bernoulli_json());
        p.g = read_g(r, identity_json());
        p.zs = read_z_grid(r, dd, {0.5, 1.0, 3.0});
        require_kernel(r, p.base, p.g, p.zs);
        return p;
      },
      [](const P& p) {
        Json j;
        write_common(j, p.c);
        j["theta"] = p.theta;
        j["d"] = p.d;
        j["n"] = p.n;
        j["base"] = base_to_json(p.base);
        j["g"] = functional_to_json(p.g);
        j["z_grid"] = p.zs;
        return j;
      },
      [](const P& p, const RunContext& ctx) {
        const ShapeMeasure shape(p.theta, p.base);
        const RngStream rng(p.c.seed);
        const auto lhs = bg_laplace_mc(shape, p.d, p.g, p.zs, p.c.mc(ctx), rng.child(0));
        const auto rhs =
            partition_expansion_mc(shape, p.g, p.zs, p.theta - p.d, p.n, p.c.quad_order, p.c.mc(ctx), rng.child(1));
        std::vector<GridPoint> out;
        for (std::size_t i = 0; i < p.zs.size(); ++i) {
          McEstimate r = rhs[i];
          r.mean += p.c.rhs_offset;
          out.push_back(mc2_point(z_label(p.zs[i]), lhs[i], r, p.c.eps));
        }
        return out;
      });
}

struct Eq11Params {
  Common c;
  double theta = 1.0;
  BaseMeasure base = BaseMeasure::dirac(1.0);
  Functional g;
  std::vector<std::pair<double, double>> vw;
};

CheckInfo check_eq11() {
  using P = Eq11Params;
  return make_check<P>(
      "check_eq11", "joint Laplace transform of the Gamma process: E[exp(-v T - w mu(g))] = (1+v)^-theta exp(-psi(w/(1+v)))",
      [](ParamReader& r, const CheckDefaults& d, std::uint64_t seed) {
        P p;
        p.c = read_common(r, d, seed, 100000);
        p.theta = read_theta(r, 1.0);
        p.base = read_base(r, Json{{"family", "dirac"}, {"at", 1.0}});
        p.g = read_g(r, identity_json());
        const Json grid = r.raw("vw_grid", Json{{0.0, 0.0}, {0.5, 0.0}, {1.0, 2.0}, {2.0, 0.5}});
        if (!grid.is_array() || grid.empty()) throw ConfigError(r.field("vw_grid") + ": expected a list of [v, w] pairs");
        for (std::size_t i = 0; i < grid.size(); ++i) {
          const Json& e = grid[i];
          if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
            throw ConfigError(r.field("vw_grid") + "[" + std::to_string(i) + "]: expected [v, w]");
          }
          const double v = e[0].get<double>(), w = e[1].get<double>();
          r.require(v >= 0.0 && w >= 0.0, "vw_grid", "v >= 0 and w >= 0");
          require_kernel(r, p.base, p.g, {w / (1.0 + v)}, "vw_grid");
          p.vw.emplace_back(v, w);
        }
        return p;
      },
      [](const P& p) {
        Json j;
        write_common(j, p.c);
        j["theta"] = p.theta;
        j["base"] = base_to_json(p.base);
        j["g"] = functional_to_json(p.g);
        Json grid = Json::array();
        for (auto [v, w] : p.vw) grid.push_back({v, w});
        j["vw_grid"] = grid;
        return j;
      },
      [](const P& p, const RunContext& ctx) {
        const ShapeMeasure shape(p.theta, p.base);
        const auto mc = mc_estimate(RngStream(p.c.seed), p.c.mc(ctx), p.vw.size(), [&](RngStream& r, std::span<double> o) {
          const auto mu = sample_gamma_process(shape, p.c.eps, r);
          const double mg = functional_eval(mu, p.g);
          for (std::size_t k = 0; k < p.vw.size(); ++k) o[k] = std::exp(-(p.vw[k].first * mu.total_mass + p.vw[k].second * mg));
        });
        std::vector<GridPoint> out;
        for (std::size_t k = 0; k < p.vw.size(); ++k) {
          const auto [v, w] = p.vw[k];
          std::ostringstream label;
          label << "v=" << v << " w=" << w;
          out.push_back(mc_point(label.str(), mc[k].mean, eq11_rhs(shape, p.g, v, w) + p.c.rhs_offset,
                                 mc[k].std_error, p.c.eps));
        }
        return out;
      });
}

struct Eq12Params {
  TransformParams t;
  std::vector<double> observations;
};

CheckInfo check_eq12() {
  using P = Eq12Params;
  return make_check<P>(
      "check_eq12",
      "Gamma(theta+n)/Gamma(theta+n-q) E[(T + z mu(g))^-q] under the posterior shape = int exp(-psi_post(u z)) Beta(du | q, theta+n-q)",
      [](ParamReader& r, const CheckDefaults& d, std::uint64_t seed) {
        P p;
        p.t.c = read_common(r, d, seed, 100000);
        p.t.theta = read_theta(r, 2.0);
        p.t.q = r.number("q", 1.0);
        r.require(p.t.q > 0.0, "q", "q > 0");
        p.t.base = read_base(r, uniform_json());
        p.t.g = read_g(r, identity_json());
        p.observations = r.numbers("observations", std::vector<double>{});
        r.require(p.t.theta + static_cast<double>(p.observations.size()) - p.t.q > 0.0, "q", "theta + n - q > 0");
        p.t.zs = read_z_grid(r, d, {0.0, 0.5, 1.0, 3.0});
        const ShapeMeasure post = posterior_shape(ShapeMeasure(p.t.theta, p.t.base), p.observations);
        require_kernel(r, post.base(), p.t.g, p.t.zs);
        return p;
      },
      [](const P& p) {
        Json j = transform_json(p.t, true);
        j["observations"] = p.observations;
        return j;
      },
      [](const P& p, const RunContext& ctx) {
        const auto& t = p.t;
        const ShapeMeasure post = posterior_shape(ShapeMeasure(t.theta, t.base), p.observations);
        const double mass = post.theta();
        const double ratio = std::exp(log_gamma(mass) - log_gamma(mass - t.q));
        const auto mc = mc_estimate(RngStream(t.c.seed), t.c.mc(ctx), t.zs.size(), [&](RngStream& r, std::span<double> o) {
          const auto mu = sample_gamma_process(post, t.c.eps, r);
          const double mg = functional_eval(mu, t.g);
          for (std::size_t k = 0; k < t.zs.size(); ++k) o[k] = ratio * std::pow(mu.total_mass + t.zs[k] * mg, -t.q);
        });
        std::vector<GridPoint> out;
        for (std::size_t k = 0; k < t.zs.size(); ++k) {
          const double rhs = eq13_value(post, t.g, t.q, t.zs[k], t.c.quad_order) + t.c.rhs_offset;
          out.push_back(mc_point(z_label(t.zs[k]), mc[k].mean, rhs, mc[k].std_error, t.c.eps));
        }
        return out;
      });
}

// ---------------------------------------------------------------------------
// Distributional identities.

struct LawParams {
  Common c;
  double theta = 1.0;
  double q = 1.0;
  int n = 1;
  BaseMeasure base = BaseMeasure::uniform(0.0, 1.0);
  Functional g;
  std::vector<double> zs;
};

Json law_json(const LawParams& p, bool with_q, bool with_n, bool with_z) {
  Json j;
  write_common(j, p.c);
  j["theta"] = p.theta;
  if (with_q) j["q"] = p.q;
  if (with_n) j["n"] = p.n;
  j["base"] = base_to_json(p.base);
  j["g"] = functional_to_json(p.g);
  if (with_z) j["z_grid"] = p.zs;
  return j;
}

std::vector<double> draws(const Common& c, const RunContext& ctx, const RngStream& rng,
                          const std::function<double(RngStream&)>& f) {
  return mc_draws(rng, c.mc(ctx), f);
}

void shift(std::vector<double>& xs, double by) {
  if (by != 0.0) for (double& x : xs) x += by;
}

CheckInfo check_eq18() {
  using P = LawParams;
  return make_check<P>(
      "check_eq18", "mu_{theta,theta-q}(g) = U_{q,theta+n-q} (mu_theta(g) + sum_j G_j g(Y*_j)) in law, Y from the urn",
      [](ParamReader& r, const CheckDefaults& d, std::uint64_t seed) {
        P p;
        p.c = read_common(r, d, seed, 100000, true);
        p.theta = read_theta(r, 2.0);
        p.q = r.number("q", 1.0);
        r.require(p.q > 0.0, "q", "q > 0");
        const auto n = r.integer("n", std::max(1, minimal_depth(p.theta, p.q)));
        r.require(n >= 0 && n <= 1000, "n", "0 <= n <= 1000");
        p.n = static_cast<int>(n);
        r.require(p.theta + p.n - p.q > 0.0, "n", "theta + n - q > 0");
        p.base = read_base(r, uniform_json());
        p.g = read_g(r, identity_json());
        return p;
      },
      [](const P& p) { return law_json(p, true, true, false); },
      [](const P& p, const RunContext& ctx) {
        const ShapeMeasure shape(p.theta, p.base);
        const RngStream rng(p.c.seed);
        const auto lhs = draws(p.c, ctx, rng.child(0), [&](RngStream& r) {
          return functional_eval(sample_beta_gamma(shape, p.theta - p.q, p.c.eps, r), p.g);
        });
        auto rhs = draws(p.c, ctx, rng.child(1),
                         [&](RngStream& r) { return sample_rhs_eq18(shape, p.q, p.n, p.g, p.c.eps, r); });
        shift(rhs, p.c.rhs_offset);
        return std::vector<GridPoint>{ks_point("beta_gamma vs urn mixture", lhs, rhs)};
      });
}

CheckInfo check_eq19() {
  using P = LawParams;
  return make_check<P>(
      "check_eq19", "mu_{theta,theta-1}(g) = U_{1,theta} (mu_theta(g) + T_1 g(Y_1)) in law",
      [](ParamReader& r, const CheckDefaults& d, std::uint64_t seed) {
        P p;
        p.c = read_common(r, d, seed, 100000, true);
        p.theta = read_theta(r, 1.0);
        p.base = read_base(r, uniform_json());
        p.g = read_g(r, identity_json());
        return p;
      },
      [](const P& p) { return law_json(p, false, false, false); },
      [](const P& p, const RunContext& ctx) {
        const ShapeMeasure shape(p.theta, p.base);
        const RngStream rng(p.c.seed);
        const auto lhs = draws(p.c, ctx, rng.child(0), [&](RngStream& r) {
          return functional_eval(sample_beta_gamma(shape, p.theta - 1.0, p.c.eps, r), p.g);
        });
        auto rhs = draws(p.c, ctx, rng.child(1), [&](RngStream& r) {
          const double u = sample_beta(1.0, p.theta, r);
          const double mg = functional_eval(sample_gamma_process(shape, p.c.eps, r), p.g);
          const double t1 = r.exponential();
          return u * (mg + t1 * p.g(sample_base(p.base, r)));
        });
        shift(rhs, p.c.rhs_offset);
        return std::vector<GridPoint>{ks_point("beta_gamma vs U_{1,theta} mixture", lhs, rhs)};
      });
}

CheckInfo check_eq20() {
  using P = LawParams;
  return make_check<P>(
      "check_eq20", "fixed point of the Gamma process: mu_theta(g) = U_{theta,1} (mu_theta(g) + T_1 g(Y_1)) in law",
      [](ParamReader& r, const CheckDefaults& d, std::uint64_t seed) {
        P p;
        p.c = read_common(r, d, seed, 100000, true);
        p.theta = read_theta(r, 1.0);
        p.base = read_base(r, uniform_json());
        p.g = read_g(r, identity_json());
        return p;
      },
      [](const P& p) { return law_json(p, false, false, false); },
      [](const P& p, const RunContext& ctx) {
        const ShapeMeasure shape(p.theta, p.base);
        const RngStream rng(p.c.seed);
        const auto lhs = draws(p.c, ctx, rng.child(0), [&](RngStream& r) {
          return functional_eval(sample_gamma_process(shape, p.c.eps, r), p.g);
        });
        auto rhs = draws(p.c, ctx, rng.child(1), [&](RngStream& r) {
          const double u = sample_beta(p.theta, 1.0, r);
          const double mg = functional_eval(sample_gamma_process(shape, p.c.eps, r), p.g);
          const double t1 = r.exponential();
          return u * (mg + t1 * p.g(sample_base(p.base, r)));
        });
        shift(rhs, p.c.rhs_offset);
        return std::vector<GridPoint>{ks_point("gamma vs U_{theta,1} mixture", lhs, rhs)};
      });
}

/// H(A) for A = [lo, hi).
double base_mass(const BaseMeasure& h, double lo, double hi) {
  double m = 0.0;
  if (h.diffuse()) m += h.diffuse_weight() * (h.diffuse()->cdf(hi) - h.diffuse()->cdf(lo));
  for (const Atom& a : h.atoms()) {
    if (a.location >= lo && a.location < hi) m += a.prob;
  }
  return m;
}

CheckInfo check_eq21() {
  using P = LawParams;
  return make_check<P>(
      "check_eq21", "mu_{theta,theta-q}(g) = T_q P_theta(g) in law, T_q ~ Gamma(q) independent of P_theta",
      [](ParamReader& r, const CheckDefaults& d, std::uint64_t seed) {
        P p;
        p.c = read_common(r, d, seed, 100000, true);
        p.theta = read_theta(r, 2.0);
        p.q = r.number("q", 1.5);
        r.require(p.q > 0.0, "q", "q > 0");
        // Importance weights T^{-d} with d = theta - q have finite variance iff theta - 2d > 0.
        r.require(2.0 * p.q - p.theta > 0.0, "q", "2q - theta > 0 (finite importance-weight variance)");
        p.base = read_base(r, bernoulli_json());
        p.g = read_g(r, Json{{"kind", "indicator"}, {"lo", 0.5}, {"hi", 1.5}});
        p.zs = read_z_grid(r, d, {0.5, 1.0, 3.0});
        require_kernel(r, p.base, p.g, p.zs);
        return p;
      },
      [](const P& p) { return law_json(p, true, false, true); },
      [](const P& p, const RunContext& ctx) {
        const ShapeMeasure shape(p.theta, p.base);
        const RngStream rng(p.c.seed);
        const double dd = p.theta - p.q;
        const auto lhs = draws(p.c, ctx, rng.child(0), [&](RngStream& r) {
          return functional_eval(sample_beta_gamma(shape, dd, p.c.eps, r), p.g);
        });
        auto rhs = draws(p.c, ctx, rng.child(1), [&](RngStream& r) {
          const double tq = sample_gamma(p.q, r);
          return tq * functional_eval(sample_dirichlet_sb(shape, p.c.eps, r), p.g);
        });
        shift(rhs, p.c.rhs_offset);
        std::vector<GridPoint> out{ks_point("beta_gamma vs T_q P", lhs, rhs)};

        // Independent route: the Beta-Gamma law as a T^{-d} tilt of the Gamma process.
        const double log_norm = log_gamma(p.theta) - log_gamma(p.theta - dd);
        const auto tilted = mc_estimate(rng.child(2), p.c.mc(ctx), p.zs.size(), [&](RngStream& r, std::span<double> o) {
          const auto mu = sample_gamma_process(shape, p.c.eps, r);
          const double w = std::exp(log_norm - dd * std::log(mu.total_mass));
          const double mg = functional_eval(mu, p.g);
          for (std::size_t k = 0; k < p.zs.size(); ++k) o[k] = w * std::exp(-p.zs[k] * mg);
        });
        for (std::size_t k = 0; k < p.zs.size(); ++k) {
          const McEstimate rk = moments_of(rhs, [&](double x) { return std::exp(-p.zs[k] * x); });
          out.push_back(mc2_point(z_label(p.zs[k]) + " tilted gamma vs T_q P laplace", tilted[k], rk, p.c.eps));
        }

        if (p.g.kind() == Functional::Kind::indicator) {
          // P(A) ~ Beta(theta h, theta (1 - h)), so the moments of T_q P(A) are explicit.
          const double h = base_mass(p.base, p.g.params()[0], p.g.params()[1]);
          const double m1 = p.q * h + p.c.rhs_offset;
          const double m2 = p.q * (p.q + 1.0) * h * (p.theta * h + 1.0) / (p.theta + 1.0) + p.c.rhs_offset;
          const McEstimate e1 = moments_of(lhs, [](double x) { return x; });
          const McEstimate e2 = moments_of(lhs, [](double x) { return x * x; });
          out.push_back(moment_point("E[mu(A)] vs q h", e1.mean, m1, e1.std_error, p.c.eps));
          out.push_back(moment_point("E[mu(A)^2] vs q(q+1) h (theta h + 1)/(theta + 1)", e2.mean, m2, e2.std_error, p.c.eps));
        }
        return out;
      });
}

struct Prop23Params {
  Common c;
  double theta = 1.0;
  int n = 1;
  double alpha = 1.5;
  double q = 3.0;
  BaseMeasure base = BaseMeasure::arcsine();
  Functional g;
};

CheckInfo check_prop23() {
  using P = Prop23Params;
  return make_check<P>(
      "check_prop23",
      "constraint equation T_theta U_{alpha,q-alpha} + sum_j G_j g(Y*_j) = T_{theta+n} U_{alpha,q-alpha} in law (arcsine H)",
      [](ParamReader& r, const CheckDefaults& d, std::uint64_t seed) {
        P p;
        p.c = read_common(r, d, seed, 100000, true);
        p.theta = read_theta(r, 1.0);
        const auto n = r.integer("n", 1);
        r.require(n >= 1 && n <= 1000, "n", "1 <= n <= 1000");
        p.n = static_cast<int>(n);
        p.alpha = r.number("alpha", p.theta + 0.5);
        p.q = r.number("q", 2.0 * p.theta + 1.0);
        r.require(p.alpha > 0.0, "alpha", "alpha > 0");
        r.require(p.q - p.alpha > 0.0, "q", "q - alpha > 0");
        p.base = read_base(r, arcsine_json());
        p.g = read_g(r, identity_json());
        return p;
      },
      [](const P& p) {
        Json j;
        write_common(j, p.c);
        j["theta"] = p.theta;
        j["n"] = p.n;
        j["alpha"] = p.alpha;
        j["q"] = p.q;
        j["base"] = base_to_json(p.base);
        j["g"] = functional_to_json(p.g);
        return j;
      },
      [](const P& p, const RunContext& ctx) {
        const ShapeMeasure shape(p.theta, p.base);
        const RngStream rng(p.c.seed);
        std::vector<double> tied(static_cast<std::size_t>(p.c.n_samples));
        auto lhs = draws(p.c, ctx, rng.child(0), [&](RngStream& r) {
          const ObservationSet obs = sample_blackwell_macqueen(shape, p.n, r);
          double s = sample_gamma(p.theta, r) * sample_beta(p.alpha, p.q - p.alpha, r);
          const auto es = obs.multiplicities();
          for (std::size_t j = 0; j < es.size(); ++j) s += sample_gamma(es[j], r) * p.g(obs.uniques()[j]);
          return s;
        });
        auto rhs = draws(p.c, ctx, rng.child(1), [&](RngStream& r) {
          return sample_gamma(p.theta + p.n, r) * sample_beta(p.alpha, p.q - p.alpha, r);
        });
        shift(rhs, p.c.rhs_offset);
        std::vector<GridPoint> out{ks_point("urn side vs T_{theta+n} U", lhs, rhs)};
        if (p.n >= 2 && p.base.nonatomic()) {
          // Tie frequency of the first two urn draws.
          const auto ties = draws(p.c, ctx, rng.child(2), [&](RngStream& r) {
            return sample_blackwell_macqueen(shape, 2, r).partition().count() == 1 ? 1.0 : 0.0;
          });
          const McEstimate t = moments_of(ties, [](double x) { return x; });
          out.push_back(mc_point("P(Y_2 = Y_1) vs 1/(theta + 1)", t.mean, 1.0 / (p.theta + 1.0) + p.c.rhs_offset,
                                 t.std_error, p.c.eps));
        }
        return out;
      });
}

struct Prop24Params {
  Common c;
  double theta = 1.0;
  std::vector<double> zs;
};

CheckInfo check_prop24() {
  using P = Prop24Params;
  return make_check<P>(
      "check_prop24", "arcsine H, g = id: P_theta(g) ~ Beta(theta+1/2, theta+1/2) and E[exp(-z mu_{theta,-theta-1}(g))] = (1+z)^-(theta+1/2)",
      [](ParamReader& r, const CheckDefaults& d, std::uint64_t seed) {
        P p;
        p.c = read_common(r, d, seed, 100000, true);
        p.theta = read_theta(r, 1.0);
        p.zs = read_z_grid(r, d, {0.5, 1.0, 3.0});
        return p;
      },
      [](const P& p) {
        Json j;
        write_common(j, p.c);
        j["theta"] = p.theta;
        j["z_grid"] = p.zs;
        return j;
      },
      [](const P& p, const RunContext& ctx) {
        const ShapeMeasure shape(p.theta, BaseMeasure::arcsine());
        const Functional id = Functional::identity();
        const double a = p.theta + 0.5;
        const RngStream rng(p.c.seed);
        const auto pg = draws(p.c, ctx, rng.child(0),
                              [&](RngStream& r) { return functional_eval(sample_dirichlet_sb(shape, p.c.eps, r), id); });
        const double off = p.c.rhs_offset;
        std::vector<GridPoint> out;
        out.push_back(ks1_point("P(g) vs Beta(theta+1/2, theta+1/2)", pg,
                                [&](double x) { return reg_inc_beta(a, a, std::clamp(x - off, 0.0, 1.0)); }, 0.5 + off));
        const McEstimate m = moments_of(pg, [](double x) { return x; });
        out.push_back(moment_point("mean vs 1/2", m.mean, 0.5 + off, m.std_error, p.c.eps));
        const McEstimate v = moments_of(pg, [](double x) { return (x - 0.5) * (x - 0.5); });
        out.push_back(moment_point("variance vs 1/(4(2 theta + 2))", v.mean, 1.0 / (8.0 * p.theta + 8.0) + off,
                                   v.std_error, p.c.eps));

        const auto bg = bg_laplace_mc(shape, -(p.theta + 1.0), id, p.zs, p.c.mc(ctx), rng.child(1));
        const auto gm = mc_estimate(rng.child(2), p.c.mc(ctx), p.zs.size(), [&](RngStream& r, std::span<double> o) {
          const double mg = functional_eval(sample_gamma_process(shape, p.c.eps, r), id);
          for (std::size_t k = 0; k < p.zs.size(); ++k) o[k] = std::exp(-p.zs[k] * mg);
        });
        const auto rule = jacobi_rule(a, a, p.c.quad_order);
        for (std::size_t k = 0; k < p.zs.size(); ++k) {
          const double z = p.zs[k];
          out.push_back(mc_point(z_label(z) + " beta_gamma(q = 2 theta + 1) vs (1+z)^-(theta+1/2)", bg[k].mean,
                                 std::pow(1.0 + z, -a) + off, bg[k].std_error, p.c.eps));
          // E[exp(-z T_theta U)] = E[(1 + z U)^-theta], U ~ Beta(theta+1/2, theta+1/2).
          const double nested = rule->integrate([&](double u) { return std::pow(1.0 + z * u, -p.theta); });
          out.push_back(mc_point(z_label(z) + " gamma laplace vs E[exp(-z T U)]", gm[k].mean, nested + off,
                                 gm[k].std_error, p.c.eps));
        }
        return out;
      });
}

struct Remark25Params {
  Common c;
  std::vector<double> ps;
  std::vector<double> thetas;
};

CheckInfo check_remark25() {
  using P = Remark25Params;
  return make_check<P>(
      "check_remark25", "U_{1,theta} = T_1^p / (T_1^p + T_theta tau_p) in law, tau_p = S^p with S positive p-stable",
      [](ParamReader& r, const CheckDefaults& d, std::uint64_t seed) {
        P p;
        p.c = read_common(r, d, seed, 100000, true);
        p.ps = r.numbers("p_grid", std::vector<double>{0.3, 0.5, 0.7});
        p.thetas = r.numbers("theta_grid", std::vector<double>{0.5, 1.0, 2.0});
        r.require(!p.ps.empty(), "p_grid", "a nonempty grid");
        r.require(!p.thetas.empty(), "theta_grid", "a nonempty grid");
        for (double x : p.ps) r.require(x > 0.0 && x < 1.0, "p_grid", "0 < p < 1");
        for (double x : p.thetas) r.require(x > 0.0, "theta_grid", "theta > 0");
        return p;
      },
      [](const P& p) {
        Json j;
        write_common(j, p.c);
        j["p_grid"] = p.ps;
        j["theta_grid"] = p.thetas;
        return j;
      },
      [](const P& p, const RunContext& ctx) {
        const RngStream rng(p.c.seed);
        const double off = p.c.rhs_offset;
        std::vector<GridPoint> out;
        std::uint64_t k = 0;
        for (double sp : p.ps) {
          for (double theta : p.thetas) {
            const auto u = draws(p.c, ctx, rng.child(k++), [&](RngStream& r) { return sample_remark25_u(theta, sp, r); });
            std::ostringstream label;
            label << "p=" << sp << " theta=" << theta;
            out.push_back(ks1_point(label.str() + " vs Beta(1, theta)", u,
                                    [&](double x) {
                                      const double y = std::clamp(x - off, 0.0, 1.0);
                                      return -std::expm1(theta * std::log1p(-y));
                                    },
                                    1.0 / (1.0 + theta) + off));
            const McEstimate m = moments_of(u, [](double x) { return x; });
            out.push_back(moment_point(label.str() + " mean vs 1/(1 + theta)", m.mean, 1.0 / (1.0 + theta) + off,
                                       m.std_error, p.c.eps));
          }
        }
        return out;
      });
}

struct GammaIdentityParams {
  Common c;
  std::vector<std::pair<double, double>> grid;
};

CheckInfo check_gamma_identity() {
  using P = GammaIdentityParams;
  return make_check<P>(
      "check_gamma_identity", "Gamma identity T^-q = (1/Gamma(q)) int_0^inf v^(q-1) exp(-v T) dv",
      [](ParamReader& r, const CheckDefaults& d, std::uint64_t seed) {
        P p;
        p.c = read_common(r, d, seed, 1);
        const Json grid = r.raw("tq_grid", Json{{1.0, 1.0}, {2.0, 1.0}, {3.0, 0.5}, {0.1, 2.5}, {10.0, 0.2}, {0.5, 4.0},
                                                {25.0, 1.5}, {0.02, 0.7}});
        if (!grid.is_array() || grid.empty()) throw ConfigError(r.field("tq_grid") + ": expected a list of [T, q] pairs");
        for (std::size_t i = 0; i < grid.size(); ++i) {
          const Json& e = grid[i];
          if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
            throw ConfigError(r.field("tq_grid") + "[" + std::to_string(i) + "]: expected [T, q]");
          }
          r.require(e[0].get<double>() > 0.0 && e[1].get<double>() > 0.0, "tq_grid", "T > 0 and q > 0");
          p.grid.emplace_back(e[0].get<double>(), e[1].get<double>());
        }
        return p;
      },
      [](const P& p) {
        Json j;
        write_common(j, p.c);
        Json grid = Json::array();
        for (auto [t, q] : p.grid) grid.push_back({t, q});
        j["tq_grid"] = grid;
        return j;
      },
      [](const P& p, const RunContext&) {
        std::vector<GridPoint> out;
        for (auto [t, q] : p.grid) {
          std::ostringstream label;
          label << "T=" << t << " q=" << q;
          out.push_back(exact_point(label.str(), gamma_identity_check(t, q), std::pow(t, -q) + p.c.rhs_offset,
                                    kExactTol, true));
        }
        return out;
      });
}

std::vector<CheckInfo> build_registry() {
  return {check_eq2(),  check_eq10(), check_eq11(), check_eq12(),   check_eq14(),
          check_eq15(), check_eq17(), check_partition_invariance(), check_eq18(),
          check_eq19(), check_eq20(), check_eq21(), check_prop23(), check_prop24(),
          check_remark25(), check_gamma_identity()};
}

}  // namespace

Json report_to_json(const CheckReport& r) {
  Json points = Json::array();
  for (const GridPoint& p : r.points) {
    points.push_back({{"label", p.label},
                      {"kind", p.kind},
                      {"lhs", p.lhs},
                      {"rhs", p.rhs},
                      {"se", p.se},
                      {"tolerance", p.tolerance},
                      {"deviation", p.deviation},
                      {"rule", p.rule},
                      {"pass", p.pass}});
  }
  return {{"check", r.name}, {"citation", r.citation}, {"params", r.params}, {"points", points}, {"pass", r.pass}};
}

const std::vector<CheckInfo>& check_registry() {
  static const std::vector<CheckInfo> registry = build_registry();
  return registry;
}

const CheckInfo* find_check(std::string_view name) {
  for (const CheckInfo& c : check_registry()) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::vector<std::string> check_names() {
  std::vector<std::string> out;
  for (const CheckInfo& c : check_registry()) out.push_back(c.name);
  return out;
}

std::string list_checks() {
  std::size_t width = 0;
  for (const CheckInfo& c : check_registry()) width = std::max(width, c.name.size());
  std::ostringstream os;
  for (const CheckInfo& c : check_registry()) {
    os << c.name << std::string(width + 2 - c.name.size(), ' ') << c.citation << "\n";
  }
  return os.str();
}

CheckReport run_check(std::string_view name, const Json& params, std::uint64_t seed, const RunContext& ctx,
                      const CheckDefaults& defaults) {
  const CheckInfo* info = find_check(name);
  if (!info) throw ConfigError("unknown check '" + std::string(name) + "'");
  return info->run(info->resolve(params, defaults, seed, "params"), ctx);
}

}  // namespace dpf
