#ifndef DPF_CHECKS_HPP_
#define DPF_CHECKS_HPP_

#include "dpf/params.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dpf {

/// One compared quantity. For Monte Carlo kinds `se` is the (combined)
/// standard error; for KS kinds lhs/rhs are the sample means, `deviation` is
/// the KS statistic and `tolerance` the null quantile.
struct GridPoint {
  std::string label;
  std::string kind;  // mc, mc2, moment, ks, ks1, exact
  double lhs = 0.0;
  double rhs = 0.0;
  double se = 0.0;
  double tolerance = 0.0;
  double deviation = 0.0;
  std::string rule;
  bool pass = false;
};

struct CheckReport {
  std::string name;
  std::string citation;
  Json params;  // fully resolved: rerunning with these params reproduces the report
  std::vector<GridPoint> points;
  bool pass = false;
};

Json report_to_json(const CheckReport& r);

/// Run-wide defaults applied to every check that does not set the field.
struct CheckDefaults {
  std::optional<std::int64_t> n_samples;
  std::optional<std::int64_t> chunk_size;
  std::optional<double> eps;
  std::optional<int> quad_order;
  std::optional<std::vector<double>> z_grid;
};

struct RunContext {
  int jobs = 1;
};

struct CheckInfo {
  std::string name;
  std::string citation;
  /// Validates raw params and fills every default. `seed` is used when the
  /// params carry no explicit seed. Throws ConfigError naming the field.
  std::function<Json(const Json& params, const CheckDefaults& defaults, std::uint64_t seed, const std::string& path)>
      resolve;
  /// Runs on resolved params.
  std::function<CheckReport(const Json& resolved, const RunContext& ctx)> run;
};

const std::vector<CheckInfo>& check_registry();
const CheckInfo* find_check(std::string_view name);
std::vector<std::string> check_names();
/// One line per check: name and the identity it verifies.
std::string list_checks();

/// Resolves and runs one check in a single call.
CheckReport run_check(std::string_view name, const Json& params, std::uint64_t seed, const RunContext& ctx = {},
                      const CheckDefaults& defaults = {});

}  // namespace dpf

#endif  // DPF_CHECKS_HPP_
