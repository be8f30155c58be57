#include "mhd2d/run.hpp"

#include <cmath>
#include <optional>

namespace mhd2d {

namespace {

void add(DissipationIntegrals& total, const DissipationIntegrals& inc) {
  total.diss_u += inc.diss_u;
  total.diff_b += inc.diff_b;
  total.hbeta_j += inc.hbeta_j;
}

void check_advective(const MHDState& s, double dt) {
  const double bound = advective_dt_bound(s);
  if (dt > bound) {
    throw SimulationAbort(s.t, "dt = " + std::to_string(dt) +
                                   " exceeds the advective bound " +
                                   std::to_string(bound));
  }
}

}  // namespace

RunResult run(const SolverConfig& config, const MHDState& init,
              const RunObserver& observer) {
  config.validate();
  if (init.grid().n() != config.n) throw Error("run: state grid does not match config.n");
  if (init.w.mean_coefficient() != 0.0 || init.j.mean_coefficient() != 0.0) {
    throw Error("run: initial w and j must have zero mean");
  }

  const double t0 = init.t;
  const double span = config.t_end - t0;
  if (span < 0.0) throw Error("run: t_end lies before the initial time");
  // Full steps, then one shorter step for any remainder above round-off.
  long full = long(std::floor(span / config.dt + 1e-9));
  double rest = span - double(full) * config.dt;
  if (rest <= 1e-12 * std::max(1.0, std::abs(config.t_end))) rest = 0.0;

  RunResult result{init, {}, 0, false, {}, 0.0};
  DissipationIntegrals integrals;
  const IntegratingFactorRK4 stepper(config, init.grid(), config.dt);
  std::optional<IntegratingFactorRK4> last;
  if (rest > 0.0) last.emplace(config, init.grid(), rest);
  const long total = full + (rest > 0.0 ? 1 : 0);

  auto emit = [&](const MHDState& s) {
    result.records.push_back(compute_record(s, config, integrals));
    if (observer) observer(s, result.records.back());
  };

  MHDState state = init;
  long recorded_at = -1;
  try {
    check_advective(state, config.dt);
    emit(state);
    recorded_at = 0;
    for (long k = 1; k <= total; ++k) {
      const bool short_step = k > full;
      auto r = (short_step ? *last : stepper).advance(state);
      r.state.t = short_step ? config.t_end : t0 + double(k) * config.dt;
      add(integrals, r.increments);
      state = std::move(r.state);
      result.steps = k;
      if (k % config.output_every == 0 || k == total) {
        check_advective(state, config.dt);
        emit(state);
        recorded_at = k;
      }
    }
  } catch (const SimulationAbort& e) {
    result.aborted = true;
    result.abort_reason = e.what();
    result.abort_time = e.time();
    if (recorded_at != result.steps) {
      try {
        emit(state);
      } catch (const SimulationAbort&) {
      }
    }
  }
  result.final_state = std::move(state);
  return result;
}

}  // namespace mhd2d
