#include "dpf/runner.hpp"

#include <chrono>

namespace dpf {

RunSummary run_config(const RunConfig& config, std::ostream& out, const RunOptions& opts) {
  RunSummary summary;
  const RunContext ctx{opts.jobs};
  for (const CheckSpec& spec : config.checks) {
    const auto t0 = std::chrono::steady_clock::now();
    const CheckReport rep = find_check(spec.name)->run(spec.params, ctx);
    Json rec = report_to_json(rep);
    if (opts.timing) {
      rec["duration_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    out << rec.dump() << '\n';
    out.flush();
    ++summary.n_checks;
    if (rep.pass) ++summary.n_passed;
  }
  return summary;
}

}  // namespace dpf
