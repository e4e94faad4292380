#include "dpf/config.hpp"

#include "dpf/rng.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace dpf {

namespace {

std::string line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

std::string known_names() {
  std::string out;
  for (const std::string& n : check_names()) out += (out.empty() ? "" : ", ") + n;
  return out;
}

CheckDefaults parse_defaults(const Json& j) {
  CheckDefaults d;
  ParamReader r(j, "defaults");
  if (r.has("n_samples")) d.n_samples = r.integer("n_samples");
  if (r.has("chunk_size")) d.chunk_size = r.integer("chunk_size");
  if (r.has("eps")) d.eps = r.number("eps");
  if (r.has("quad_order")) d.quad_order = static_cast<int>(r.integer("quad_order"));
  if (r.has("z_grid")) d.z_grid = r.numbers("z_grid");
  r.finish();
  return d;
}

}  // namespace

RunConfig parse_config(std::string_view text, const ConfigOverrides& overrides) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ConfigError("config: malformed JSON at " + line_col(text, e.byte) + ": " + e.what());
  }
  if (!root.is_object()) throw ConfigError("config: expected a JSON object at the top level");
  ParamReader r(root, "");
  RunConfig cfg;
  cfg.seed = overrides.seed ? *overrides.seed : r.seed("seed", kDefaultSeed);
  if (overrides.seed) r.raw("seed", Json());
  if (r.has("output")) cfg.output = r.string("output");
  cfg.defaults = parse_defaults(r.raw("defaults", Json::object()));
  if (overrides.n_samples) cfg.defaults.n_samples = overrides.n_samples;
  if (overrides.quad_order) cfg.defaults.quad_order = overrides.quad_order;

  const Json checks = r.raw("checks");
  if (!checks.is_array()) throw ConfigError("checks: expected a list");
  r.finish();
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const std::string path = "checks[" + std::to_string(i) + "]";
    ParamReader cr(checks[i], path);
    const std::string name = cr.string("name");
    Json params = cr.raw("params", Json::object());
    cr.finish();
    const CheckInfo* info = find_check(name);
    if (!info) throw ConfigError(path + ".name: unknown check '" + name + "'; known checks: " + known_names());
    if (!params.is_object()) throw ConfigError(path + ".params: expected an object");
    if (overrides.n_samples) params["n_samples"] = *overrides.n_samples;
    if (overrides.quad_order) params["quad_order"] = *overrides.quad_order;
    cfg.checks.push_back({name, info->resolve(params, cfg.defaults, derive_seed(cfg.seed, i), path + ".params")});
  }
  return cfg;
}

RunConfig load_config(const std::string& path, const ConfigOverrides& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open config");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), overrides);
}

std::optional<std::uint64_t> seed_from_env() {
  const char* v = std::getenv(kSeedEnvVar);
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const unsigned long long s = std::strtoull(v, &end, 10);
  if (errno != 0 || *end != '\0' || *v == '-') {
    throw ConfigError(std::string(kSeedEnvVar) + ": expected a nonnegative integer, got '" + v + "'");
  }
  return static_cast<std::uint64_t>(s);
}

}  // namespace dpf
