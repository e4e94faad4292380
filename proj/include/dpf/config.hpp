#ifndef DPF_CONFIG_HPP_
#define DPF_CONFIG_HPP_

#include "dpf/checks.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dpf {

/// Values forced from the command line. They take precedence over every
/// value in the config, including per-check fields.
struct ConfigOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> n_samples;
  std::optional<int> quad_order;
};

struct CheckSpec {
  std::string name;
  Json params;  // resolved
};

struct RunConfig {
  std::uint64_t seed = 0;
  CheckDefaults defaults;
  std::optional<std::string> output;
  std::vector<CheckSpec> checks;
};

inline constexpr std::uint64_t kDefaultSeed = 20240611;
inline constexpr const char* kSeedEnvVar = "DPF_SEED";

/// Schema:
///   {
///     "seed": 42,                                   optional
///     "output": "reports.jsonl",                    optional
///     "defaults": {"n_samples": 100000, "chunk_size": 10000, "eps": 1e-8,
///                  "quad_order": 64, "z_grid": [0.5, 1, 3]},   all optional
///     "checks": [{"name": "check_eq2", "params": {...}}, ...]
///   }
/// Check i without an explicit seed gets derive_seed(seed, i). Every record
/// is validated and resolved here; errors name the field path, or the line
/// and column for malformed JSON.
RunConfig parse_config(std::string_view text, const ConfigOverrides& overrides = {});
RunConfig load_config(const std::string& path, const ConfigOverrides& overrides = {});

/// The seed in DPF_SEED, if set. Throws ConfigError when it is not an integer.
std::optional<std::uint64_t> seed_from_env();

}  // namespace dpf

#endif  // DPF_CONFIG_HPP_
