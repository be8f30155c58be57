// Generalized 2D MHD with fractional dissipation nu*Lambda^{2 alpha} on the
// velocity and diffusion eta*Lambda^{2 beta} on the magnetic field, evolved
// in vorticity-current form (w, j) = (curl u, curl b):
//
//   d_t w + nu Lambda^{2a} w  = -(u.grad) w + (b.grad) j
//   d_t j + eta Lambda^{2b} j = -(u.grad) j + (b.grad) w
//                               + 2 [d1 b1 (d1 u2 + d2 u1) - d1 u1 (d1 b2 + d2 b1)]
//
// u and b are recovered from w and j by Biot-Savart. The primitive (u, b)
// form is kept as an independent cross-check of the curl form.

#ifndef MHD2D_DYNAMICS_HPP_
#define MHD2D_DYNAMICS_HPP_

#include <cstdint>
#include <string>

#include "mhd2d/spectral.hpp"

namespace mhd2d {

enum class Integrator { kIntegratingFactorRK4 };
enum class InitialKind { kOrszagTang, kRandomBand };

std::string to_string(Integrator integrator);
std::string to_string(InitialKind kind);

struct SolverConfig {
  double alpha = 0.0;
  double beta = 0.0;
  double nu = 0.0;
  double eta = 0.0;
  int n = 256;
  double dt = 2.5e-4;
  double t_end = 1.0;
  int output_every = 40;
  Integrator integrator = Integrator::kIntegratingFactorRK4;
  std::uint64_t seed = 0;
  // Initial data used by the run harness.
  InitialKind init = InitialKind::kOrszagTang;
  double amplitude = 1.0;
  int band = 8;

  /// Throws Error naming the first violated constraint.
  void validate() const;
  /// alpha as the stepper sees it: 0 when nu == 0.
  double effective_alpha() const { return nu == 0.0 ? 0.0 : alpha; }

  friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

struct MHDState {
  double t = 0.0;
  SpectralField w;
  SpectralField j;

  explicit MHDState(const TorusGrid& grid) : w(grid), j(grid) {}
  MHDState(double time, SpectralField vorticity, SpectralField current)
      : t(time), w(std::move(vorticity)), j(std::move(current)) {}

  const TorusGrid& grid() const { return w.grid(); }
};

struct PrimitiveState {
  SpectralVector u;
  SpectralVector b;
};

/// Time derivative of (w, j).
struct CurlRhs {
  SpectralField dw;
  SpectralField dj;
};

/// Raised when a run must stop: non-finite values, the instability detector,
/// or a violated advective step bound. Carries the offending time.
class SimulationAbort : public Error {
 public:
  SimulationAbort(double t, const std::string& why);
  double time() const { return time_; }

 private:
  double time_;
};

PrimitiveState to_primitive(const MHDState& state);
MHDState to_curl_form(const PrimitiveState& p, double t = 0.0);

/// kBracket evaluates the equations as written above; kFlux uses
/// dw = -div(u w - b j), dj = -Lap(u1 b2 - u2 b1), which is cheaper and, for
/// dealiased input, equal up to round-off. The stepper uses kFlux.
enum class RhsForm { kBracket, kFlux };

/// Nonlinear part of the curl-form right-hand side; products are formed in
/// physical space and dealiased. Outputs have zero mean.
CurlRhs vorticity_rhs(const MHDState& state, RhsForm form = RhsForm::kBracket);
/// Linear part: (-nu Lambda^{2 alpha} w, -eta Lambda^{2 beta} j).
CurlRhs linear_rhs(const MHDState& state, const SolverConfig& config);

/// Full primitive-form time derivative, pressure removed by projection.
PrimitiveState primitive_rhs(const PrimitiveState& state,
                             const SolverConfig& config);

/// v_hat - xi (xi . v_hat) / |xi|^2 for xi != 0; the mean is kept and the
/// Nyquist lines are dropped.
SpectralVector leray_project(const SpectralVector& v);

/// Quantities integrated in time alongside the state:
/// ||Lambda^alpha u||^2, ||Lambda^beta b||^2 and ||Lambda^beta j||^2.
struct DissipationIntegrals {
  double diss_u = 0.0;
  double diff_b = 0.0;
  double hbeta_j = 0.0;
};

/// Integrating-factor RK4. The linear dissipation is integrated exactly via
/// exp(-nu |xi|^{2 alpha} dt) and exp(-eta |xi|^{2 beta} dt); the nonlinear
/// part uses the classical four-stage rule in the integrating-factor frame.
class IntegratingFactorRK4 {
 public:
  IntegratingFactorRK4(const SolverConfig& config, const TorusGrid& grid,
                       double dt);

  struct Result {
    MHDState state;
    /// The same four-stage rule applied to the dissipation rates, so the
    /// energy budget closes to the stepper's own order.
    DissipationIntegrals increments;
  };

  /// Throws SimulationAbort on non-finite values or when ||w||_{L^2} grows
  /// more than tenfold in one step.
  Result advance(const MHDState& state) const;
  double dt() const { return dt_; }

  /// Instantaneous rates at a state.
  DissipationIntegrals rates(const MHDState& state) const;

 private:
  SolverConfig config_;
  TorusGrid grid_;
  double dt_;
  // Half-spectrum layout, n x (n/2 + 1).
  RealArray decay_w_full_, decay_w_half_, decay_j_full_, decay_j_half_;
  RealArray weight_diss_u_, weight_diff_b_, weight_hbeta_j_, weight_l2_;

  DissipationIntegrals rates_half(const ComplexArray& w,
                                  const ComplexArray& j) const;
};

/// One step with config.dt.
MHDState step(const MHDState& state, const SolverConfig& config);

/// dt <= 0.5 * h / max(||u||_inf, ||b||_inf), evaluated on the collocation
/// grid. Returns infinity for a motionless state.
double advective_dt_bound(const MHDState& state);

/// Total energy ||u||^2 + ||b||^2 via Plancherel.
double total_energy(const MHDState& state);

/// Initial data. Orszag-Tang: u = A(-sin x2, sin x1), b = A(-sin x2, sin 2x1).
/// Random-band: independent random_field draws for w and j on modes with
/// max |xi_i| <= band, spectrum slope 2, scaled to rms(w) = rms(j) = A.
MHDState make_initial(InitialKind kind, const TorusGrid& grid,
                      std::uint64_t seed, double amplitude, int band);

/// Scaling map u -> lambda^{2g-1} u(lambda x, lambda^{2g} t) on the lattice:
/// mode xi moves to lambda*xi, w and j gain lambda^{2g}, time becomes
/// t / lambda^{2g}. The result lives on `target` (default: same grid).
MHDState rescale(const MHDState& state, int lambda, double gamma);
MHDState rescale(const MHDState& state, int lambda, double gamma,
                 const TorusGrid& target);

}  // namespace mhd2d

#endif  // MHD2D_DYNAMICS_HPP_
