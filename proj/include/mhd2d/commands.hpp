// The mhd2d subcommands as library calls. Each writes its artifacts into
// `out_dir` (created if needed) and returns the process exit status.
//
//   run     diagnostics.csv, final.chk, regime_report.json, manifest.json
//   sweep   one run directory per (alpha, beta) point under points/,
//           summary.csv and manifest.json
//   check   check_report.json
//   resume  as run, continuing from a checkpoint

#ifndef MHD2D_COMMANDS_HPP_
#define MHD2D_COMMANDS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>

#include "mhd2d/io.hpp"
#include "mhd2d/run.hpp"

namespace mhd2d {

struct RunOutcome {
  int exit_code = 0;
  bool aborted = false;
  std::vector<DiagnosticsRecord> records;
};

/// Exit status 0 on completion, 2 if the run aborted (all files are still
/// written).
RunOutcome cmd_run(const SolverConfig& config, const std::filesystem::path& out_dir,
                   std::ostream& log);

/// Points run concurrently on up to `threads` workers (0: hardware
/// concurrency). A point that fails or aborts is recorded in summary.csv
/// and the sweep carries on; the exit status is 0 only if every point
/// completed.
int cmd_sweep(const SweepSpec& spec, const std::filesystem::path& out_dir,
              std::ostream& log, unsigned threads = 0);

/// Nonzero exit status when any property fails.
int cmd_check(const std::string& suite, std::uint64_t seed,
              const std::filesystem::path& out_dir, std::ostream& log);

struct ResumeOptions {
  double t_end = 0.0;
  /// Default to the values in the manifest.json next to the checkpoint, or
  /// to the SolverConfig defaults when there is none.
  std::optional<double> dt;
  std::optional<int> output_every;
};

/// Continues from `checkpoint` to options.t_end. The time integrals in the
/// new diagnostics.csv start from zero at the checkpoint time.
RunOutcome cmd_resume(const std::filesystem::path& checkpoint,
                      const ResumeOptions& options,
                      const std::filesystem::path& out_dir, std::ostream& log);

}  // namespace mhd2d

#endif  // MHD2D_COMMANDS_HPP_
