#include "dpf/config.hpp"
#include "dpf/rng.hpp"
#include "dpf/runner.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

using dpf::ConfigError;
using dpf::Json;

namespace {

namespace fs = std::filesystem;

std::string parse_error(const std::string& text) {
  try {
    dpf::parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::string run_to_string(const dpf::RunConfig& cfg, dpf::RunSummary* summary = nullptr, int jobs = 1) {
  std::ostringstream out;
  const auto s = dpf::run_config(cfg, out, {jobs, false});
  if (summary) *summary = s;
  return out.str();
}

const char* kSmall = R"({
  "seed": 11,
  "defaults": {"n_samples": 20000, "chunk_size": 5000},
  "checks": [
    {"name": "check_eq15"},
    {"name": "check_eq19"},
    {"name": "check_gamma_identity"}
  ]
})";

fs::path temp_dir() {
  const fs::path d = fs::temp_directory_path() / ("dpf_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int exit_code(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string cli() { return DPF_CLI_PATH; }

}  // namespace

TEST_CASE("list_checks names every check with a citation") {
  const std::string text = dpf::list_checks();
  CHECK(text.find("check_eq2 ") != std::string::npos);
  CHECK(text.find("check_prop24") != std::string::npos);
  std::istringstream in(text);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    CHECK(line.rfind("check_", 0) == 0);
    CHECK(line.size() > 40);
  }
  CHECK(lines >= 12);
}

TEST_CASE("minimal config parses with defaults") {
  const dpf::RunConfig cfg = dpf::parse_config(R"({"checks": [{"name": "check_eq2"}]})");
  REQUIRE(cfg.checks.size() == 1);
  CHECK(cfg.seed == dpf::kDefaultSeed);
  CHECK(!cfg.output);
  CHECK(cfg.checks[0].params.at("seed").get<std::uint64_t>() == dpf::derive_seed(dpf::kDefaultSeed, 0));
  CHECK(cfg.checks[0].params.at("n_samples").get<std::int64_t>() == 1000000);
}

TEST_CASE("config seeds, defaults and overrides") {
  const dpf::RunConfig cfg = dpf::parse_config(kSmall);
  CHECK(cfg.seed == 11);
  CHECK(cfg.checks[1].params.at("seed").get<std::uint64_t>() == dpf::derive_seed(11, 1));
  CHECK(cfg.checks[0].params.at("n_samples").get<std::int64_t>() == 20000);
  CHECK(cfg.checks[0].params.at("chunk_size").get<std::int64_t>() == 5000);

  dpf::ConfigOverrides ov;
  ov.seed = 99;
  ov.n_samples = 12000;
  ov.quad_order = 32;
  const dpf::RunConfig o = dpf::parse_config(kSmall, ov);
  CHECK(o.seed == 99);
  CHECK(o.checks[1].params.at("seed").get<std::uint64_t>() == dpf::derive_seed(99, 1));
  CHECK(o.checks[0].params.at("n_samples").get<std::int64_t>() == 12000);
  CHECK(o.checks[0].params.at("quad_order").get<int>() == 32);

  const dpf::RunConfig forced = dpf::parse_config(
      R"({"checks": [{"name": "check_eq15", "params": {"n_samples": 500, "seed": 3}}]})", ov);
  CHECK(forced.checks[0].params.at("n_samples").get<std::int64_t>() == 12000);
  CHECK(forced.checks[0].params.at("seed").get<std::uint64_t>() == 3);
}

TEST_CASE("config errors name the field, the inequality, or the position") {
  CHECK(parse_error(R"({"checks": [{"name": "check_eq15", "params": {"theta": 1, "q": 2}}]})") ==
        "checks[0].params.q: requires theta - q > 0");
  const std::string unknown = parse_error(R"({"checks": [{"name": "check_eq99"}]})");
  CHECK(unknown.find("checks[0].name: unknown check 'check_eq99'") == 0);
  CHECK(unknown.find("check_eq2") != std::string::npos);
  CHECK(unknown.find("check_remark25") != std::string::npos);
  CHECK(parse_error("{\"checks\": [\n  {\"name\": \"check_eq2\",, }\n]}").find("line 2, column 24") !=
        std::string::npos);
  CHECK(parse_error(R"({"checks": [], "sede": 1})") == "sede: unknown field");
  CHECK(parse_error(R"({"seed": -1, "checks": []})").find("seed") == 0);
  CHECK(parse_error(R"({"checks": {}})") == "checks: expected a list");
  CHECK(parse_error(R"({"defaults": {"n": 1}, "checks": []})") == "defaults.n: unknown field");
  CHECK(parse_error(R"({"checks": [{"name": "check_eq2", "params": {"base": {"family": "normal"}}}]})")
            .find("checks[0].params.base.family") == 0);
  CHECK(parse_error("[1, 2]").find("top level") != std::string::npos);
  CHECK(parse_error(R"({"checks": [{"name": "check_eq2"}]})").empty());
}

TEST_CASE("seed override from the environment") {
  ::unsetenv(dpf::kSeedEnvVar);
  CHECK(!dpf::seed_from_env());
  ::setenv(dpf::kSeedEnvVar, "123", 1);
  CHECK(dpf::seed_from_env() == 123u);
  ::setenv(dpf::kSeedEnvVar, "12x", 1);
  CHECK_THROWS_AS(dpf::seed_from_env(), ConfigError);
  ::unsetenv(dpf::kSeedEnvVar);
}

TEST_CASE("run writes one record per check in config order, deterministically") {
  const dpf::RunConfig cfg = dpf::parse_config(kSmall);
  dpf::RunSummary s;
  const std::string a = run_to_string(cfg, &s);
  CHECK(s.n_checks == 3);
  CHECK(s.all_pass());
  CHECK(a == run_to_string(dpf::parse_config(kSmall), nullptr, 4));
  std::istringstream in(a);
  std::string line;
  std::vector<std::string> names;
  while (std::getline(in, line)) {
    const Json rec = Json::parse(line);
    names.push_back(rec.at("check"));
    CHECK(!rec.contains("duration_s"));
    CHECK(rec.at("pass").get<bool>());
  }
  CHECK(names == std::vector<std::string>{"check_eq15", "check_eq19", "check_gamma_identity"});

  dpf::ConfigOverrides ov;
  ov.seed = 12;
  CHECK(run_to_string(dpf::parse_config(kSmall, ov)) != a);
}

TEST_CASE("a corrupted right-hand side fails the run") {
  const dpf::RunConfig cfg = dpf::parse_config(R"({"checks": [
    {"name": "check_gamma_identity"},
    {"name": "check_eq15", "params": {"rhs_offset": 0.01}}]})");
  dpf::RunSummary s;
  run_to_string(cfg, &s);
  CHECK(s.n_checks == 2);
  CHECK(s.n_passed == 1);
  CHECK_FALSE(s.all_pass());
}

TEST_CASE("timing is opt-in") {
  const dpf::RunConfig cfg = dpf::parse_config(R"({"checks": [{"name": "check_gamma_identity"}]})");
  std::ostringstream out;
  dpf::run_config(cfg, out, {1, true});
  CHECK(Json::parse(out.str()).contains("duration_s"));
}

TEST_CASE("binary: exit status, output file and determinism") {
  const fs::path dir = temp_dir();
  write_file(dir / "ok.json", kSmall);
  write_file(dir / "bad.json", R"({"checks": [{"name": "check_gamma_identity", "params": {"rhs_offset": 1e-3}}]})");
  write_file(dir / "invalid.json", R"({"checks": [{"name": "check_eq15", "params": {"theta": 1, "q": 2}}]})");
  const std::string quiet = " 2>/dev/null";

  CHECK(exit_code(cli() + " run " + (dir / "ok.json").string() + " --out " + (dir / "a.jsonl").string() + quiet) == 0);
  CHECK(exit_code(cli() + " run " + (dir / "ok.json").string() + " --jobs 3 --out " + (dir / "b.jsonl").string() +
                  quiet) == 0);
  const std::string a = read_file(dir / "a.jsonl");
  CHECK(!a.empty());
  CHECK(a == read_file(dir / "b.jsonl"));

  CHECK(exit_code("DPF_SEED=5 " + cli() + " run " + (dir / "ok.json").string() + " --out " +
                  (dir / "env.jsonl").string() + quiet) == 0);
  CHECK(exit_code("DPF_SEED=7 " + cli() + " run " + (dir / "ok.json").string() + " --seed 5 --out " +
                  (dir / "flag.jsonl").string() + quiet) == 0);
  CHECK(read_file(dir / "env.jsonl") == read_file(dir / "flag.jsonl"));
  CHECK(read_file(dir / "env.jsonl") != a);

  CHECK(exit_code(cli() + " run " + (dir / "bad.json").string() + " --out " + (dir / "c.jsonl").string() + quiet) == 1);
  CHECK(exit_code(cli() + " run " + (dir / "invalid.json").string() + quiet + " >/dev/null") == 2);
  CHECK(exit_code(cli() + " run " + (dir / "missing.json").string() + quiet + " >/dev/null") == 2);
  CHECK(exit_code(cli() + " list >/dev/null") == 0);
  fs::remove_all(dir);
}

TEST_CASE("binary: transform and sample subcommands") {
  const fs::path dir = temp_dir();
  const fs::path out = dir / "t.txt";
  // Constant g = 1 gives (1 + z)^-q.
  REQUIRE(exit_code(cli() + " transform --name cs_eq15 --theta 2 --q 1 --z 1 --g '{\"kind\":\"constant\",\"value\":1}' > " +
                    out.string()) == 0);
  CHECK(std::stod(read_file(out)) == doctest::Approx(0.5).epsilon(1e-12));
  REQUIRE(exit_code(cli() + " transform --name gamma_identity --t 3 --q 0.5 > " + out.string()) == 0);
  CHECK(std::stod(read_file(out)) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-8));

  REQUIRE(exit_code(cli() + " sample --process dirichlet --base arcsine --count 50 --seed 3 > " + out.string()) == 0);
  std::istringstream in(read_file(out));
  double x = 0.0;
  int n = 0;
  while (in >> x) {
    CHECK(x > 0.0);
    CHECK(x < 1.0);
    ++n;
  }
  CHECK(n == 50);
  CHECK(exit_code(cli() + " sample --process beta_gamma --d 3 --theta 1 2>/dev/null >/dev/null") == 2);
  fs::remove_all(dir);
}
