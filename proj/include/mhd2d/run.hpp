// Time loop with diagnostics cadence and abort handling.

#ifndef MHD2D_RUN_HPP_
#define MHD2D_RUN_HPP_

#include <functional>
#include <string>
#include <vector>

#include "mhd2d/diagnostics.hpp"

namespace mhd2d {

struct RunResult {
  /// Last valid state; the state at t_end unless the run aborted.
  MHDState final_state;
  std::vector<DiagnosticsRecord> records;
  long steps = 0;
  bool aborted = false;
  std::string abort_reason;
  double abort_time = 0.0;
};

using RunObserver = std::function<void(const MHDState&, const DiagnosticsRecord&)>;

/// Advances `init` to config.t_end with config.dt; a shorter last step
/// lands exactly on t_end. Records are taken at the start, every
/// output_every steps and at the end; the observer sees each one as it is
/// produced. The advective bound is checked at every record, and a violation
/// aborts like a failed step: the result then holds the last valid state and
/// a record for it.
RunResult run(const SolverConfig& config, const MHDState& init,
              const RunObserver& observer = {});

}  // namespace mhd2d

#endif  // MHD2D_RUN_HPP_
