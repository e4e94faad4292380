#ifndef DPF_PARAMS_HPP_
#define DPF_PARAMS_HPP_

#include "dpf/measures.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpf {

using Json = nlohmann::json;

/// A configuration error. The message starts with the offending field path,
/// e.g. "checks[2].params.theta: must be positive".
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Typed, path-aware access to one JSON object. Every key read is recorded;
/// finish() rejects keys that were never read.
class ParamReader {
 public:
  ParamReader(const Json& obj, std::string path);

  const std::string& path() const { return path_; }
  std::string field(const std::string& key) const;
  bool has(const std::string& key) const;

  double number(const std::string& key, std::optional<double> fallback = std::nullopt);
  std::int64_t integer(const std::string& key, std::optional<std::int64_t> fallback = std::nullopt);
  std::uint64_t seed(const std::string& key, std::optional<std::uint64_t> fallback = std::nullopt);
  std::string string(const std::string& key, std::optional<std::string> fallback = std::nullopt);
  std::vector<double> numbers(const std::string& key, std::optional<std::vector<double>> fallback = std::nullopt);
  /// The raw value, or `fallback` when absent.
  Json raw(const std::string& key, std::optional<Json> fallback = std::nullopt);

  /// Throws ConfigError unless `ok`, naming the field and the violated condition.
  void require(bool ok, const std::string& key, const std::string& condition) const;
  void finish() const;

 private:
  const Json& lookup(const std::string& key) const;

  const Json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

/// Base measure schema (all numbers are JSON numbers):
///   {"family": "uniform", "lo": 0, "hi": 1}
///   {"family": "beta", "a": 2, "b": 3}
///   {"family": "arcsine"}
///   {"family": "dirac", "at": 0.5}
///   {"family": "discrete", "atoms": [[0, 0.5], [1, 0.5]]}
///   {"family": "mixture", "diffuse": <uniform|beta|arcsine>, "weight": 0.4, "atoms": [[0.5, 0.6]]}
BaseMeasure base_from_json(const Json& j, const std::string& path);
Json base_to_json(const BaseMeasure& h);

/// Functional schema, each with an optional "range": [lo, hi]:
///   {"kind": "identity"}                       (or the string "identity")
///   {"kind": "indicator", "lo": 0, "hi": 0.5}
///   {"kind": "affine", "slope": 2, "intercept": 1}
///   {"kind": "constant", "value": 1}
///   {"kind": "polynomial", "coeffs": [c0, c1, ...]}
///   {"kind": "table", "breakpoints": [...], "values": [...]}
///   {"kind": "combination", "terms": [{"coef": 1, "g": <functional>}, ...]}
Functional functional_from_json(const Json& j, const std::string& path);
Json functional_to_json(const Functional& g);

}  // namespace dpf

#endif  // DPF_PARAMS_HPP_
