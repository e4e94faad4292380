#include "dpf/checks.hpp"
#include "dpf/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <string>

using dpf::CheckReport;
using dpf::ConfigError;
using dpf::Json;

namespace {

constexpr std::uint64_t kSeed = 4242;

CheckReport run(const std::string& name, const Json& params = Json::object(), std::uint64_t seed = kSeed) {
  return dpf::run_check(name, params, seed);
}

std::string failures(const CheckReport& r) {
  std::string out;
  for (const auto& p : r.points) {
    if (!p.pass) {
      out += p.label + ": lhs=" + std::to_string(p.lhs) + " rhs=" + std::to_string(p.rhs) +
             " dev=" + std::to_string(p.deviation) + " tol=" + std::to_string(p.tolerance) + "\n";
    }
  }
  return out;
}

void require_pass(const CheckReport& r) {
  INFO(r.name << "\n" << failures(r));
  CHECK(r.pass);
  CHECK(!r.points.empty());
}

std::string config_error(const std::string& name, const Json& params) {
  const dpf::CheckInfo* info = dpf::find_check(name);
  REQUIRE(info != nullptr);
  try {
    info->resolve(params, {}, kSeed, "params");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

const Json kBernoulli = {{"family", "discrete"}, {"atoms", {{0.0, 0.5}, {1.0, 0.5}}}};

}  // namespace

TEST_CASE("registry lists the expected checks") {
  const auto names = dpf::check_names();
  CHECK(names.size() >= 12);
  for (const char* n : {"check_eq2", "check_eq10", "check_eq11", "check_eq12", "check_eq14", "check_eq15", "check_eq17",
                        "check_partition_invariance", "check_eq18", "check_eq19", "check_eq20", "check_eq21",
                        "check_prop23", "check_prop24", "check_remark25", "check_gamma_identity"}) {
    CHECK(dpf::find_check(n) != nullptr);
  }
  CHECK(dpf::find_check("check_missing") == nullptr);
  for (const auto& c : dpf::check_registry()) {
    CHECK(!c.citation.empty());
    CHECK(c.citation.find('\n') == std::string::npos);
  }
}

TEST_CASE("every check passes at its defaults") {
  for (const std::string& name : dpf::check_names()) {
    SUBCASE(name.c_str()) { require_pass(run(name)); }
  }
}

TEST_CASE("rhs_offset corrupts the right-hand side and every check fails") {
  for (const std::string& name : dpf::check_names()) {
    SUBCASE(name.c_str()) {
      const CheckReport r = run(name, {{"rhs_offset", 0.05}, {"n_samples", 10000}});
      CHECK_FALSE(r.pass);
      CHECK(r.params.at("rhs_offset").get<double>() == 0.05);
    }
  }
}

TEST_CASE("resolved params reproduce the report bit for bit") {
  for (const std::string& name : {"check_eq2", "check_eq14", "check_eq18", "check_prop24"}) {
    const dpf::CheckInfo* info = dpf::find_check(name);
    const Json resolved = info->resolve({{"n_samples", 20000}}, {}, kSeed, "params");
    CHECK(info->resolve(resolved, {}, 999, "params") == resolved);
    const CheckReport a = info->run(resolved, {});
    const CheckReport b = info->run(a.params, {3});
    CHECK(dpf::report_to_json(a).dump() == dpf::report_to_json(b).dump());
  }
}

TEST_CASE("seed and defaults precedence") {
  const dpf::CheckInfo* info = dpf::find_check("check_eq15");
  dpf::CheckDefaults d;
  d.n_samples = 1234;
  d.z_grid = std::vector<double>{2.0};
  const Json implicit = info->resolve(Json::object(), d, 77, "params");
  CHECK(implicit.at("seed").get<std::uint64_t>() == 77);
  CHECK(implicit.at("n_samples").get<std::int64_t>() == 1234);
  CHECK(implicit.at("z_grid") == Json::array({2.0}));
  const Json explicit_ = info->resolve({{"seed", 5}, {"n_samples", 99}, {"z_grid", {1.0}}}, d, 77, "params");
  CHECK(explicit_.at("seed").get<std::uint64_t>() == 5);
  CHECK(explicit_.at("n_samples").get<std::int64_t>() == 99);
  CHECK(explicit_.at("z_grid") == Json::array({1.0}));
  const Json builtin = info->resolve(Json::object(), {}, 77, "params");
  CHECK(builtin.at("n_samples").get<std::int64_t>() == 100000);
  CHECK(builtin.at("quad_order").get<int>() == 64);
  CHECK(dpf::find_check("check_eq2")->resolve(Json::object(), {}, 1, "p").at("n_samples").get<std::int64_t>() == 1000000);
}

TEST_CASE("preconditions fail fast naming the field and inequality") {
  CHECK(config_error("check_eq15", {{"theta", 1.0}, {"q", 2.0}}) == "params.q: requires theta - q > 0");
  CHECK(config_error("check_eq10", {{"theta", 1.0}, {"d", 1.0}}).find("theta - d > 0") != std::string::npos);
  CHECK(config_error("check_eq10", {{"d", -2.0}, {"n", 1}}).find("n + d >= 0") != std::string::npos);
  CHECK(config_error("check_eq18", {{"theta", 0.5}, {"q", 2.0}, {"n", 1}}).find("theta + n - q > 0") !=
        std::string::npos);
  CHECK(config_error("check_eq12", {{"theta", 1.0}, {"q", 1.0}}).find("theta + n - q > 0") != std::string::npos);
  CHECK(config_error("check_eq21", {{"theta", 2.0}, {"q", 1.0}}).find("2q - theta > 0") != std::string::npos);
  CHECK(config_error("check_partition_invariance", {{"base", kBernoulli}}).find("nonatomic") != std::string::npos);
  CHECK(config_error("check_partition_invariance", {{"depths", {11}}}).find("[0, 10]") != std::string::npos);
  CHECK(config_error("check_prop23", {{"alpha", 3.0}, {"q", 3.0}}).find("q - alpha > 0") != std::string::npos);
  CHECK(config_error("check_eq19", {{"n_samples", 5000}}).find("n_samples >= 10000") != std::string::npos);
  CHECK(config_error("check_remark25", {{"p_grid", {1.0}}}).find("0 < p < 1") != std::string::npos);
  CHECK(config_error("check_eq2", {{"theta", -1.0}}) == "params.theta: requires theta > 0");
  CHECK(config_error("check_eq2", {{"z_grid", {-1.0}}}).find("z >= 0") != std::string::npos);
  CHECK(config_error("check_eq2", {{"tehta", 1.0}}) == "params.tehta: unknown field");
  CHECK(config_error("check_eq2", {{"g", {{"kind", "affine"}, {"slope", -2.0}, {"intercept", 0.0}}}})
            .find("1 + z*g(y) > 0") != std::string::npos);
  CHECK(config_error("check_eq2", {{"base", {{"family", "beta"}, {"a", 0.0}, {"b", 1.0}}}}) ==
        "params.base.a: requires a > 0");
  CHECK(config_error("check_eq2", {{"g", "cube"}}).find("params.g") == 0);
}

TEST_CASE("check_eq2 pins the closed-form right-hand side") {
  const CheckReport r = run("check_eq2", {{"n_samples", 100000}, {"z_grid", {0.0, 0.5, 1.0, 3.0, 10.0}}});
  require_pass(r);
  REQUIRE(r.points.size() == 5);
  CHECK(r.points[0].lhs == 1.0);
  CHECK(r.points[0].rhs == doctest::Approx(1.0).epsilon(1e-14));
  for (std::size_t i = 1; i < 5; ++i) {
    const double z = r.params["z_grid"][i].get<double>();
    CHECK(r.points[i].rhs == doctest::Approx(1.0 / std::sqrt(1.0 + z)).epsilon(1e-12));
  }
  CHECK(r.points[3].rhs == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("check_eq2 with uniform H") {
  // psi(z) = 2 int_0^1 log(1 + z y) dy = 2((1 + z) log(1 + z) / z - 1)
  const CheckReport r = run("check_eq2", {{"theta", 2.0}, {"base", "uniform"}, {"n_samples", 100000}});
  require_pass(r);
  for (const auto& p : r.points) {
    const double z = std::stod(p.label.substr(2));
    CHECK(p.rhs == doctest::Approx(std::exp(-2.0 * ((1.0 + z) * std::log1p(z) / z - 1.0))).epsilon(1e-12));
  }
}

TEST_CASE("check_eq14 fixtures on both sides of theta = q") {
  for (auto [theta, q] : {std::pair{2.0, 0.5}, {1.0, 1.0}, {0.5, 1.0}, {0.75, 2.0}, {1.0, 3.0}}) {
    for (const Json& base : {kBernoulli, Json("uniform")}) {
      const CheckReport r = run("check_eq14", {{"theta", theta}, {"q", q}, {"base", base}});
      INFO("theta=" << theta << " q=" << q << " base=" << base.dump());
      require_pass(r);
      bool has15 = false, has17 = false;
      for (const auto& p : r.points) {
        has15 = has15 || p.label.find("cs_eq15") != std::string::npos;
        has17 = has17 || p.label.find("cs_eq17") != std::string::npos;
      }
      CHECK(has15 == (theta > q));
      CHECK(has17 == (q == 1.0));
    }
  }
}

TEST_CASE("estimated transforms are nonincreasing in z up to 3 SE") {
  const CheckReport r = run("check_eq15", {{"base", "uniform"}, {"z_grid", {0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0}}});
  require_pass(r);
  for (std::size_t i = 1; i < r.points.size(); ++i) {
    CHECK(r.points[i].lhs <= r.points[i - 1].lhs + 3.0 * std::hypot(r.points[i].se, r.points[i - 1].se));
    CHECK(r.points[i].rhs <= r.points[i - 1].rhs);
    CHECK(r.points[i].lhs > 0.0);
    CHECK(r.points[i].lhs <= 1.0);
  }
}

TEST_CASE("check_eq10 fixtures") {
  require_pass(run("check_eq10", {{"n", 0}}));
  require_pass(run("check_eq10", {{"theta", 2.0}, {"d", 0.5}, {"n", 2}}));
  require_pass(run("check_eq10", {{"theta", 2.0}, {"d", 0.5}, {"n", 2}, {"base", "uniform"}}));
  require_pass(run("check_eq10", {{"theta", 1.5}, {"d", -1.0}, {"n", 3}, {"base", "arcsine"}}));
}

TEST_CASE("check_eq11 hand values") {
  const CheckReport r = run("check_eq11");
  require_pass(r);
  // theta = 1, H = delta_1: (1 + v)^-1 (1 + w/(1 + v))^-1 = 1/(1 + v + w)
  for (const auto& p : r.points) {
    double v = 0.0, w = 0.0;
    std::sscanf(p.label.c_str(), "v=%lf w=%lf", &v, &w);
    CHECK(p.rhs == doctest::Approx(1.0 / (1.0 + v + w)).epsilon(1e-12));
  }
  CHECK(r.points[0].lhs == 1.0);
  CHECK(r.points[2].rhs == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("check_eq12 fixtures") {
  const CheckReport r = run("check_eq12");
  require_pass(r);
  CHECK(r.points[0].rhs == doctest::Approx(1.0).epsilon(1e-12));
  require_pass(run("check_eq12", {{"observations", {0.0, 1.0}}, {"base", kBernoulli}}));
  require_pass(run("check_eq12", {{"observations", {0.3, 0.3, 0.8}}, {"q", 2.5}}));
}

TEST_CASE("check_partition_invariance compares every depth") {
  const CheckReport r = run("check_partition_invariance");
  require_pass(r);
  int exact = 0;
  for (const auto& p : r.points) exact += p.kind == "exact";
  CHECK(exact == 2);
  const CheckReport r15 = run("check_partition_invariance", {{"theta", 2.0}, {"q", 0.5}, {"depths", {0, 1, 3}}});
  require_pass(r15);
  const CheckReport r17 = run("check_partition_invariance", {{"theta", 0.5}, {"q", 1.0}, {"depths", {1, 2, 5}}});
  require_pass(r17);
}

TEST_CASE("distributional identity fixtures") {
  require_pass(run("check_eq18", {{"theta", 0.75}, {"q", 2.0}}));
  require_pass(run("check_eq18", {{"theta", 1.0}, {"q", 0.5}, {"n", 0}, {"base", kBernoulli}}));
  require_pass(run("check_eq19", {{"theta", 2.5}, {"base", "arcsine"}}));
  require_pass(run("check_eq20", {{"g", {{"kind", "constant"}, {"value", 1.0}}}}));
  require_pass(run("check_eq20", {{"theta", 0.3}, {"base", kBernoulli}}));
  const CheckReport r21 = run("check_eq21");
  require_pass(r21);
  int moments = 0;
  for (const auto& p : r21.points) moments += p.kind == "moment";
  CHECK(moments == 2);
}

TEST_CASE("check_eq18 default depth is the minimal admissible one") {
  const dpf::CheckInfo* info = dpf::find_check("check_eq18");
  CHECK(info->resolve({{"theta", 0.75}, {"q", 2.0}}, {}, 1, "p").at("n").get<int>() == 2);
  CHECK(info->resolve({{"theta", 2.0}, {"q", 1.0}}, {}, 1, "p").at("n").get<int>() == 1);
}

TEST_CASE("check_prop23 urn fixtures") {
  require_pass(run("check_prop23", {{"n", 1}}));
  const CheckReport r2 = run("check_prop23", {{"n", 2}});
  require_pass(r2);
  CHECK(r2.points.size() == 2);
  CHECK(r2.points[1].rhs == doctest::Approx(0.5));
}

TEST_CASE("check_prop23 rejects alpha = theta + n/2 at n = 2") {
  // With arcsine H the constraint holds only for Beta(theta + 1/2, theta + 1/2).
  const CheckReport r = run("check_prop23", {{"n", 2}, {"alpha", 2.0}, {"q", 4.0}});
  CHECK_FALSE(r.pass);
  CHECK_FALSE(r.points[0].pass);
}

TEST_CASE("check_prop24 arcsine fixtures") {
  for (double theta : {0.5, 1.0, 2.0}) {
    const CheckReport r = run("check_prop24", {{"theta", theta}});
    INFO("theta=" << theta);
    require_pass(r);
    CHECK(r.points[2].rhs == doctest::Approx(1.0 / (8.0 * theta + 8.0)));
  }
}

TEST_CASE("check_gamma_identity examples") {
  const CheckReport r = run("check_gamma_identity", {{"tq_grid", {{1.0, 1.0}, {2.0, 1.0}, {3.0, 0.5}}}});
  require_pass(r);
  CHECK(r.points[0].rhs == 1.0);
  CHECK(r.points[1].rhs == 0.5);
  CHECK(r.points[2].rhs == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(r.points[2].lhs == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-8));
}

TEST_CASE("report json carries every field") {
  const Json j = dpf::report_to_json(run("check_gamma_identity"));
  for (const char* k : {"check", "citation", "params", "points", "pass"}) CHECK(j.contains(k));
  for (const char* k : {"label", "kind", "lhs", "rhs", "se", "tolerance", "deviation", "rule", "pass"}) {
    CHECK(j["points"][0].contains(k));
  }
}
