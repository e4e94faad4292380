#ifndef DPF_RUNNER_HPP_
#define DPF_RUNNER_HPP_

#include "dpf/config.hpp"

#include <cstddef>
#include <ostream>

namespace dpf {

struct RunOptions {
  int jobs = 1;
  /// Adds wall-clock "duration_s" to each record. Off by default so that
  /// reports are byte-identical across runs.
  bool timing = false;
};

struct RunSummary {
  std::size_t n_checks = 0;
  std::size_t n_passed = 0;
  bool all_pass() const { return n_passed == n_checks; }
};

/// Runs every check in config order and writes one JSON record per line,
/// flushing after each record.
RunSummary run_config(const RunConfig& config, std::ostream& out, const RunOptions& opts = {});

}  // namespace dpf

#endif  // DPF_RUNNER_HPP_
