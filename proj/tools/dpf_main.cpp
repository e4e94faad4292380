#include "dpf/config.hpp"
#include "dpf/runner.hpp"
#include "dpf/samplers.hpp"
#include "dpf/transforms.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

using dpf::Json;

/// Accepts a JSON value or a bare shorthand such as `uniform`.
Json json_arg(const std::string& s) {
  try {
    return Json::parse(s);
  } catch (const Json::parse_error&) {
    return Json(s);
  }
}

void print_value(double x) { std::printf("%.17g\n", x); }

struct MeasureArgs {
  double theta = 1.0;
  std::string base = "uniform";
  std::string g = "identity";

  dpf::ShapeMeasure shape() const { return {theta, dpf::base_from_json(json_arg(base), "--base")}; }
  dpf::Functional functional() const { return dpf::functional_from_json(json_arg(g), "--g"); }
};

void add_measure_options(CLI::App* app, MeasureArgs& m) {
  app->add_option("--theta", m.theta, "total mass theta")->capture_default_str();
  app->add_option("--base", m.base, "base measure H as JSON or shorthand (uniform, arcsine)")->capture_default_str();
  app->add_option("--g", m.g, "functional g as JSON or shorthand (identity)")->capture_default_str();
}

int run_command(const std::string& config_path, const dpf::ConfigOverrides& overrides, const std::string& out_path,
                const dpf::RunOptions& opts) {
  const dpf::RunConfig cfg = dpf::load_config(config_path, overrides);
  const std::string target = !out_path.empty() ? out_path : cfg.output.value_or("");
  dpf::RunSummary summary;
  if (target.empty() || target == "-") {
    summary = dpf::run_config(cfg, std::cout, opts);
  } else {
    std::ofstream out(target, std::ios::binary | std::ios::trunc);
    if (!out) {
      std::cerr << "error: cannot open " << target << " for writing\n";
      return 2;
    }
    summary = dpf::run_config(cfg, out, opts);
    if (!out) {
      std::cerr << "error: write to " << target << " failed\n";
      return 2;
    }
  }
  std::cerr << summary.n_passed << "/" << summary.n_checks << " checks passed\n";
  return summary.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation and verification of Dirichlet and Beta-Gamma process functionals"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "run the checks listed in a JSON config; exit 0 iff all pass");
  std::string config_path, out_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> n_samples;
  std::optional<int> quad_order;
  dpf::RunOptions run_opts;
  run->add_option("config", config_path, "config file")->required();
  run->add_option("--seed", seed, "global seed (overrides DPF_SEED and the config)");
  run->add_option("--out", out_path, "report file, one JSON record per line (default: config output or stdout)");
  run->add_option("--jobs", run_opts.jobs, "worker threads for Monte Carlo chunks")->check(CLI::Range(1, 1024));
  run->add_option("--n-samples", n_samples, "force the sample count of every check")->check(CLI::PositiveNumber);
  run->add_option("--quad-order", quad_order, "force the quadrature order of every check")->check(CLI::PositiveNumber);
  run->add_flag("--timing", run_opts.timing, "add wall-clock duration_s to each record");

  // list
  auto* list = app.add_subcommand("list", "list the registered checks");

  // sample
  auto* sample = app.add_subcommand("sample", "print raw draws of a functional, one per line");
  MeasureArgs sm;
  std::string process = "dirichlet";
  double sd = 0.0, sq = 1.0, sp = 0.5, seps = dpf::kDefaultEps;
  int sn = 1;
  std::int64_t count = 1000;
  std::uint64_t sseed = dpf::kDefaultSeed;
  add_measure_options(sample, sm);
  sample->add_option("--process", process, "dirichlet | gamma | beta_gamma | eq18_rhs | remark25")
      ->check(CLI::IsMember({"dirichlet", "gamma", "beta_gamma", "eq18_rhs", "remark25"}))
      ->capture_default_str();
  sample->add_option("--d", sd, "Beta-Gamma discount d (theta - d > 0)")->capture_default_str();
  sample->add_option("--q", sq, "order q for eq18_rhs")->capture_default_str();
  sample->add_option("--n", sn, "urn depth for eq18_rhs")->capture_default_str();
  sample->add_option("--p", sp, "stable index for remark25")->capture_default_str();
  sample->add_option("--eps", seps, "truncation tolerance")->capture_default_str();
  sample->add_option("--count", count, "number of draws")->check(CLI::PositiveNumber)->capture_default_str();
  sample->add_option("--seed", sseed, "seed")->capture_default_str();

  // transform
  auto* transform = app.add_subcommand("transform", "evaluate one closed form");
  MeasureArgs tm;
  std::string name = "cs_eq15";
  double tq = 1.0, tz = 1.0, tv = 0.0, tw = 0.0, tt = 1.0;
  int tn = 0, tquad = dpf::kDefaultQuadOrder;
  std::vector<double> observations;
  add_measure_options(transform, tm);
  transform
      ->add_option("--name", name,
                   "psi | laplace_gamma | cs_eq15 | cs_eq17 | partition_exact | eq13 | eq11 | gamma_identity")
      ->check(CLI::IsMember(
          {"psi", "laplace_gamma", "cs_eq15", "cs_eq17", "partition_exact", "eq13", "eq11", "gamma_identity"}))
      ->capture_default_str();
  transform->add_option("--q", tq, "order q")->capture_default_str();
  transform->add_option("--z", tz, "argument z")->capture_default_str();
  transform->add_option("--n", tn, "partition depth")->capture_default_str();
  transform->add_option("--v", tv, "eq11: weight on T")->capture_default_str();
  transform->add_option("--w", tw, "eq11: weight on mu(g)")->capture_default_str();
  transform->add_option("--t", tt, "gamma_identity: T")->capture_default_str();
  transform->add_option("--observations", observations, "eq13: observed values")->delimiter(',');
  transform->add_option("--quad-order", tquad, "Gauss-Jacobi order")->check(CLI::PositiveNumber)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      dpf::ConfigOverrides ov;
      ov.seed = seed ? seed : dpf::seed_from_env();
      ov.n_samples = n_samples;
      ov.quad_order = quad_order;
      return run_command(config_path, ov, out_path, run_opts);
    }
    if (*list) {
      std::cout << dpf::list_checks();
      return 0;
    }
    if (*sample) {
      const dpf::ShapeMeasure shape = sm.shape();
      const dpf::Functional g = sm.functional();
      dpf::RngStream rng(sseed);
      for (std::int64_t i = 0; i < count; ++i) {
        dpf::RngStream r = rng.child(static_cast<std::uint64_t>(i));
        if (process == "dirichlet") print_value(dpf::functional_eval(dpf::sample_dirichlet_sb(shape, seps, r), g));
        if (process == "gamma") print_value(dpf::functional_eval(dpf::sample_gamma_process(shape, seps, r), g));
        if (process == "beta_gamma") print_value(dpf::functional_eval(dpf::sample_beta_gamma(shape, sd, seps, r), g));
        if (process == "eq18_rhs") print_value(dpf::sample_rhs_eq18(shape, sq, sn, g, seps, r));
        if (process == "remark25") print_value(dpf::sample_remark25_u(sm.theta, sp, r));
      }
      return 0;
    }
    if (*transform) {
      if (name == "gamma_identity") {
        print_value(dpf::gamma_identity_check(tt, tq));
        return 0;
      }
      const dpf::ShapeMeasure shape = tm.shape();
      const dpf::Functional g = tm.functional();
      if (name == "psi") print_value(dpf::psi(shape, g, tz));
      if (name == "laplace_gamma") print_value(dpf::laplace_gamma(shape, g, tz));
      if (name == "cs_eq15") print_value(dpf::cs_eq15(shape, g, tz, tq, tquad));
      if (name == "cs_eq17") print_value(dpf::cs_eq17(shape, g, tz, tquad));
      if (name == "partition_exact") print_value(dpf::cs_partition_expansion_exact(shape, g, tz, tq, tn, tquad));
      if (name == "eq13") print_value(dpf::eq13_value(shape, dpf::ObservationSet(observations), g, tq, tz, tquad));
      if (name == "eq11") print_value(dpf::eq11_rhs(shape, g, tv, tw));
      return 0;
    }
  } catch (const dpf::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
