// Acceptance gate: prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails. Tolerances are fixed here and never relaxed.

#include "dpf/checks.hpp"
#include "dpf/config.hpp"
#include "dpf/quadrature.hpp"
#include "dpf/rng.hpp"
#include "dpf/runner.hpp"
#include "dpf/transforms.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

using namespace dpf;

namespace {

constexpr std::uint64_t kSeed = 20240613;
constexpr double kExactTol = 1e-8;
constexpr double kMomentTol = 1e-12;
constexpr double kOracleTol = 1e-10;

const Json kBernoulli = {{"family", "discrete"}, {"atoms", {{0.0, 0.5}, {1.0, 0.5}}}};

/// Outcome of one criterion: verdict plus a short account of what failed.
struct Verdict {
  bool pass = true;
  std::string detail;
  int n_points = 0;

  void fail(const std::string& why) {
    pass = false;
    if (detail.size() < 600) detail += (detail.empty() ? "" : "; ") + why;
  }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
  void absorb(const CheckReport& r, const std::string& tag) {
    n_points += static_cast<int>(r.points.size());
    if (r.points.empty()) fail(tag + ": no grid points");
    for (const GridPoint& p : r.points) {
      if (!p.pass) {
        std::ostringstream os;
        os << tag << " [" << p.label << "] dev=" << p.deviation << " tol=" << p.tolerance;
        fail(os.str());
      }
    }
  }
};

CheckReport run(const std::string& name, const Json& params, std::uint64_t index) {
  return run_check(name, params, derive_seed(kSeed, index));
}

bool has_point(const CheckReport& r, const std::string& needle) {
  for (const GridPoint& p : r.points) {
    if (p.label.find(needle) != std::string::npos) return true;
  }
  return false;
}

// 1. Order-theta transform against the Gamma Laplace functional.
Verdict criterion1() {
  Verdict v;
  const CheckReport r = run("check_eq2", {{"theta", 1.0}, {"base", kBernoulli}, {"z_grid", {0.5, 1.0, 3.0, 10.0}},
                                          {"n_samples", 1000000}},
                            100);
  v.absorb(r, "check_eq2");
  for (const GridPoint& p : r.points) {
    const double z = std::stod(p.label.substr(2));
    v.expect(std::fabs(p.rhs - 1.0 / std::sqrt(1.0 + z)) <= 1e-12, "rhs != (1+z)^-1/2 at " + p.label);
    if (z == 3.0) v.expect(std::fabs(p.rhs - 0.5) <= 1e-14, "rhs at z=3 is not 0.5");
  }
  return v;
}

// 2. Order-q transform against the Beta-Gamma Laplace functional.
Verdict criterion2() {
  Verdict v;
  std::uint64_t k = 200;
  for (auto [theta, q] : {std::pair{2.0, 0.5}, {1.0, 1.0}, {0.5, 1.0}, {0.75, 2.0}, {1.0, 3.0}}) {
    for (const Json& base : {kBernoulli, Json("uniform")}) {
      const CheckReport r = run("check_eq14", {{"theta", theta}, {"q", q}, {"base", base}, {"z_grid", {0.5, 1.0, 3.0}},
                                               {"n_samples", 100000}},
                                k++);
      std::ostringstream tag;
      tag << "theta=" << theta << " q=" << q << " H=" << (base.is_string() ? "uniform" : "bernoulli");
      v.absorb(r, tag.str());
      if (theta > q) v.expect(has_point(r, "vs cs_eq15"), tag.str() + ": no cs_eq15 comparison");
      if (q == 1.0) v.expect(has_point(r, "vs cs_eq17"), tag.str() + ": no cs_eq17 comparison");
      v.expect(has_point(r, "transform_mc vs beta_gamma_mc"), tag.str() + ": no MC/MC comparison");
    }
  }
  return v;
}

// 3. Depth invariance of the exact partition expansion.
Verdict criterion3() {
  Verdict v;
  const CheckReport r = run("check_partition_invariance",
                            {{"theta", 0.75}, {"q", 2.0}, {"base", "uniform"}, {"z_grid", {1.0}}, {"depths", {2, 3, 4}}},
                            300);
  v.absorb(r, "partition_invariance");
  int exact = 0, mc = 0;
  for (const GridPoint& p : r.points) {
    if (p.kind == "exact") {
      ++exact;
      v.expect(p.tolerance == kExactTol, "exact tolerance is not 1e-8");
    }
    if (p.kind == "mc") ++mc;
  }
  v.expect(exact == 2, "expected two exact depth comparisons");
  v.expect(mc == 2, "expected two MC comparisons");
  return v;
}

// 4. Posterior consequences.
Verdict criterion4() {
  Verdict v;
  v.absorb(run("check_eq10", {{"theta", 1.0}, {"d", 0.0}, {"n", 1}, {"base", kBernoulli}}, 400), "eq10 theta=1 d=0 n=1");
  v.absorb(run("check_eq10", {{"theta", 2.0}, {"d", 0.5}, {"n", 2}, {"base", kBernoulli}}, 401), "eq10 theta=2 d=0.5 n=2");
  v.absorb(run("check_eq10", {{"theta", 2.0}, {"d", 0.5}, {"n", 0}, {"base", "uniform"}}, 402), "eq10 n=0");
  const CheckReport r12 =
      run("check_eq12", {{"theta", 2.0}, {"q", 1.0}, {"base", "uniform"}, {"z_grid", {0.0, 0.5, 1.0, 3.0}}}, 403);
  v.absorb(r12, "eq12 n=0");
  v.expect(std::fabs(r12.points.front().rhs - 1.0) <= 1e-12, "eq12 rhs at z=0 is not 1");
  v.absorb(run("check_eq12", {{"theta", 2.0}, {"q", 1.0}, {"base", kBernoulli}, {"observations", {0.0, 1.0}}}, 404),
           "eq12 n=2 atoms {0,1}");
  return v;
}

// 5. Distributional identities, two-sample KS at N = 1e5.
Verdict criterion5() {
  Verdict v;
  const Json n = {{"n_samples", 100000}};
  auto with = [&](Json p) {
    p.update(n);
    return p;
  };
  v.absorb(run("check_eq18", with({{"theta", 2.0}, {"q", 1.0}, {"n", 1}, {"base", "uniform"}}), 500), "eq18");
  v.absorb(run("check_eq19", with({{"theta", 1.0}, {"base", "uniform"}}), 501), "eq19");
  v.absorb(run("check_eq20", with({{"theta", 1.0}, {"base", "uniform"}}), 502), "eq20");
  v.absorb(run("check_eq20", with({{"g", {{"kind", "constant"}, {"value", 1.0}}}}), 503), "eq20 g=1");
  const CheckReport r21 = run("check_eq21", with({}), 504);
  v.absorb(r21, "eq21");
  int moments = 0;
  for (const GridPoint& p : r21.points) moments += p.kind == "moment";
  v.expect(moments == 2, "eq21: expected two moment comparisons");
  return v;
}

// 6. Arcsine base: Beta law of P(g) and the Beta-Gamma transform.
Verdict criterion6() {
  Verdict v;
  std::uint64_t k = 600;
  for (double theta : {0.5, 1.0, 2.0}) {
    const CheckReport r = run("check_prop24", {{"theta", theta}, {"z_grid", {0.5, 1.0, 3.0}}}, k++);
    v.absorb(r, "prop24 theta=" + std::to_string(theta));
    if (theta == 1.0) {
      bool var16 = false;
      for (const GridPoint& p : r.points) var16 = var16 || (p.label.find("variance") == 0 && p.rhs == 1.0 / 16.0);
      v.expect(var16, "theta=1: variance target is not 1/16");
    }
  }
  return v;
}

// 7. Constraint equation through the urn.
Verdict criterion7() {
  Verdict v;
  v.absorb(run("check_prop23", {{"theta", 1.0}, {"n", 1}}, 700), "prop23 n=1");
  const CheckReport r2 = run("check_prop23", {{"theta", 1.0}, {"n", 2}}, 701);
  v.absorb(r2, "prop23 n=2");
  v.expect(has_point(r2, "P(Y_2 = Y_1)"), "n=2: no tie-probability comparison");
  return v;
}

// 8. Stable representation of Beta(1, theta).
Verdict criterion8() {
  Verdict v;
  const CheckReport r = run("check_remark25", {{"p_grid", {0.3, 0.5, 0.7}}, {"theta_grid", {0.5, 1.0, 2.0}}}, 800);
  v.absorb(r, "remark25");
  int ks = 0;
  for (const GridPoint& p : r.points) ks += p.kind == "ks1";
  v.expect(ks == 9, "expected 9 KS comparisons");
  return v;
}

// ---------------------------------------------------------------------------
// 9. Numerics against independent double-exponential quadrature.

double ts_beta(const std::function<double(double)>& f, double a, double b) {
  boost::math::quadrature::tanh_sinh<double> ts;
  const double norm = boost::math::beta(a, b);
  return ts.integrate(
      [&](double x, double xc) {
        const double right = xc > 0.0 ? xc : 1.0 - x;
        return f(x) * std::pow(x, a - 1.0) * std::pow(right, b - 1.0) / norm;
      },
      0.0, 1.0);
}

double oracle_expect(const BaseMeasure& h, const std::function<double(double)>& f) {
  double s = 0.0;
  if (const auto& d = h.diffuse()) {
    double m = 0.0;
    if (d->family == DiffuseFamily::uniform) {
      boost::math::quadrature::tanh_sinh<double> ts;
      m = ts.integrate(f, d->a, d->b) / (d->b - d->a);
    } else {
      m = ts_beta(f, d->a, d->b);
    }
    s += h.diffuse_weight() * m;
  }
  for (const Atom& a : h.atoms()) s += a.prob * f(a.location);
  return s;
}

struct Fixture {
  std::string text;
  ShapeMeasure shape;
  Functional g;
  double z, u;
  int e;
};

Fixture random_fixture(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto in = [&](double lo, double hi) { return lo + (hi - lo) * unit(gen); };
  std::ostringstream os;
  const double theta = in(0.3, 4.0);
  std::optional<BaseMeasure> h;
  switch (gen() % 3) {
    case 0: {
      const double lo = in(0.0, 1.0), hi = lo + in(0.5, 2.0);
      h = BaseMeasure::uniform(lo, hi);
      os << "uniform(" << lo << "," << hi << ")";
      break;
    }
    case 1: {
      const double a = in(0.3, 3.0), b = in(0.3, 3.0);
      h = BaseMeasure::beta(a, b);
      os << "beta(" << a << "," << b << ")";
      break;
    }
    default: {
      const double a = in(0.3, 3.0), b = in(0.3, 3.0), w = in(0.3, 0.9);
      const double x1 = in(0.0, 1.0), x2 = in(0.0, 1.0), split = in(0.2, 0.8);
      std::vector<Atom> atoms{{std::min(x1, x2), (1.0 - w) * split}, {std::max(x1, x2) + 0.01, (1.0 - w) * (1.0 - split)}};
      h = BaseMeasure(DiffusePart{DiffuseFamily::beta, a, b}, w, atoms);
      os << "mixture(beta(" << a << "," << b << "), w=" << w << ")";
    }
  }
  Functional g = Functional::identity();
  switch (gen() % 3) {
    case 0:
      os << " g=id";
      break;
    case 1: {
      const double s = in(0.5, 2.0), c = in(0.0, 1.0);
      g = Functional::affine(s, c);
      os << " g=" << s << "y+" << c;
      break;
    }
    default: {
      const double c0 = in(0.0, 1.0), c1 = in(0.0, 1.0), c2 = in(0.0, 1.0);
      g = Functional::polynomial({c0, c1, c2});
      os << " g=poly(" << c0 << "," << c1 << "," << c2 << ")";
    }
  }
  const double z = in(0.1, 10.0), u = in(0.0, 1.0);
  const int e = 1 + static_cast<int>(gen() % 5);
  os << " theta=" << theta << " z=" << z << " u=" << u << " e=" << e;
  return {os.str(), ShapeMeasure(theta, *h), g, z, u, e};
}

Verdict criterion9() {
  Verdict v;
  // Gauss-Jacobi rules reproduce Beta moments E[U^k] = prod_{i<k} (a+i)/(a+b+i) for k <= 2m-1.
  for (auto [a, b] : {std::pair{0.5, 0.5}, {1.0, 1.0}, {2.0, 0.5}, {0.3, 4.0}, {5.0, 5.0}, {1.5, 2.5}}) {
    for (int m : {1, 4, 16, 64}) {
      const auto rule = jacobi_rule(a, b, m);
      double exact = 1.0;
      for (int k = 0; k <= 2 * m - 1; ++k) {
        const double got = rule->integrate([k](double x) { return std::pow(x, k); });
        ++v.n_points;
        if (std::fabs(got - exact) > kMomentTol) {
          std::ostringstream os;
          os << "Beta(" << a << "," << b << ") m=" << m << " k=" << k << " err=" << std::fabs(got - exact);
          v.fail(os.str());
        }
        exact *= (a + k) / (a + b + k);
      }
    }
  }
  // psi and moment_integral on 10 random fixtures.
  std::mt19937_64 gen(kSeed);
  for (int i = 0; i < 10; ++i) {
    const Fixture f = random_fixture(gen);
    const BaseMeasure& h = f.shape.base();
    const double psi_ref =
        f.shape.theta() * oracle_expect(h, [&](double y) { return std::log1p(f.z * f.g(y)); });
    const double mom_ref = oracle_expect(h, [&](double y) { return std::pow(1.0 + f.u * f.z * f.g(y), -f.e); });
    for (QuadMethod method : {QuadMethod::fixed, QuadMethod::adaptive}) {
      const double p = psi(f.shape, f.g, f.z, method);
      const double m = moment_integral(h, f.g, f.z, f.u, f.e, method);
      v.n_points += 2;
      const std::string tag = method == QuadMethod::fixed ? "fixed" : "adaptive";
      if (std::fabs(p - psi_ref) > kOracleTol * std::max(1.0, std::fabs(psi_ref))) {
        std::ostringstream os;
        os << "psi " << tag << " err=" << std::fabs(p - psi_ref) << " at " << f.text;
        v.fail(os.str());
      }
      if (std::fabs(m - mom_ref) > kOracleTol * std::max(1.0, std::fabs(mom_ref))) {
        std::ostringstream os;
        os << "moment_integral " << tag << " err=" << std::fabs(m - mom_ref) << " at " << f.text;
        v.fail(os.str());
      }
    }
  }
  v.absorb(run("check_gamma_identity", Json::object(), 900), "gamma_identity");
  return v;
}

// ---------------------------------------------------------------------------
// 10. Reproducibility and the negative control.

std::string run_text(const RunConfig& cfg, int jobs, RunSummary* s = nullptr) {
  std::ostringstream out;
  const RunSummary r = run_config(cfg, out, {jobs, false});
  if (s) *s = r;
  return out.str();
}

int exit_code(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Verdict criterion10(const std::string& cli) {
  Verdict v;
  const std::string seed = std::to_string(derive_seed(kSeed, 1000));
  const std::string good = R"({"seed": )" + seed + R"(, "defaults": {"n_samples": 20000}, "checks": [
    {"name": "check_eq2"}, {"name": "check_eq14", "params": {"theta": 0.5, "q": 1}},
    {"name": "check_eq19"}, {"name": "check_remark25"}]})";
  const std::string bad = R"({"seed": )" + seed + R"(, "checks": [
    {"name": "check_eq17", "params": {"n_samples": 20000, "rhs_offset": 0.02}}]})";
  RunSummary s1, s2;
  const std::string a = run_text(parse_config(good), 1, &s1);
  const std::string b = run_text(parse_config(good), 3, &s2);
  v.expect(!a.empty() && a == b, "library reports differ between runs");
  v.expect(s1.all_pass(), "control config did not pass");
  RunSummary sb;
  run_text(parse_config(bad), 1, &sb);
  v.expect(!sb.all_pass(), "corrupted right-hand side passed");

  if (!cli.empty()) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("dpf_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    std::ofstream(dir / "good.json") << good;
    std::ofstream(dir / "bad.json") << bad;
    const std::string run = cli + " run ";
    v.expect(exit_code(run + (dir / "good.json").string() + " --out " + (dir / "1.jsonl").string() + " 2>/dev/null") == 0,
             "cli exit status nonzero on a passing config");
    v.expect(exit_code(run + (dir / "good.json").string() + " --out " + (dir / "2.jsonl").string() + " 2>/dev/null") == 0,
             "cli exit status nonzero on the second run");
    v.expect(read_file(dir / "1.jsonl") == read_file(dir / "2.jsonl"), "cli reports are not byte-identical");
    v.expect(read_file(dir / "1.jsonl") == a, "cli report differs from the library report");
    v.expect(exit_code(run + (dir / "bad.json").string() + " >/dev/null 2>/dev/null") != 0,
             "cli exit status zero on a corrupted right-hand side");
    fs::remove_all(dir);
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  struct Item {
    int id;
    const char* what;
    std::function<Verdict()> run;
  };
  const std::vector<Item> items = {
      {1, "order-theta transform equals the Gamma Laplace functional (N=1e6)", criterion1},
      {2, "order-q transform: Dirichlet MC, Beta-Gamma MC and quadrature agree", criterion2},
      {3, "exact partition expansion is depth invariant and matches MC", criterion3},
      {4, "posterior Beta-Gamma and Gamma-ratio identities", criterion4},
      {5, "distributional identities pass two-sample KS", criterion5},
      {6, "arcsine base gives Beta(theta+1/2, theta+1/2)", criterion6},
      {7, "constraint equation through the urn, n = 1 and 2", criterion7},
      {8, "stable representation of Beta(1, theta)", criterion8},
      {9, "quadrature against independent integrators", criterion9},
      {10, "byte-identical reports and a failing negative control", [&] { return criterion10(cli); }},
  };
  bool all = true;
  for (const Item& it : items) {
    Verdict v;
    try {
      v = it.run();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    all = all && v.pass;
    std::printf("%s criterion %d: %s (%d points)%s%s\n", v.pass ? "PASS" : "FAIL", it.id, it.what, v.n_points,
                v.detail.empty() ? "" : " -- ", v.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
