// Monitored norms of a state, the energy budget, the inequality ratios tied
// to simulation fields, and the per-run regime summary.

#ifndef MHD2D_DIAGNOSTICS_HPP_
#define MHD2D_DIAGNOSTICS_HPP_

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "mhd2d/dynamics.hpp"

namespace mhd2d {

/// One time sample. Squared quantities are squared L^2 norms on T^2.
struct DiagnosticsRecord {
  double t = 0.0;
  double energy_u = 0.0;  // ||u||^2
  double energy_b = 0.0;  // ||b||^2
  double X = 0.0;         // ||w||^2 + ||j||^2
  double diss_u = 0.0;    // ||Lambda^alpha u||^2
  double diff_b = 0.0;    // ||Lambda^beta b||^2
  double hbeta_b = 0.0;   // ||Lambda^beta b||^2
  double h2beta_b = 0.0;  // ||Lambda^{2 beta} b||^2
  std::array<double, 4> lp_w{};  // ||w||_{L^p}, p = 2, 4, 8, inf
  double linf_w = 0.0;
  double linf_grad_u = 0.0;
  double int_diss_u = 0.0;   // int_0^t ||Lambda^alpha u||^2
  double int_diff_b = 0.0;   // int_0^t ||Lambda^beta b||^2
  double int_hbeta_j = 0.0;  // int_0^t ||Lambda^beta j||^2
  // ||Lambda^gamma b|| at gamma = beta + alpha / 2, the midpoint of
  // (beta, alpha + beta). Not part of the CSV.
  double lgamma_b = 0.0;

  double energy() const { return energy_u + energy_b; }
};

/// The time integrals are supplied by the caller (the run loop accumulates
/// them with the stepper's own quadrature). Throws SimulationAbort on
/// non-finite values.
DiagnosticsRecord compute_record(const MHDState& state,
                                 const SolverConfig& config,
                                 const DissipationIntegrals& integrals = {});

/// max_t |E(t) + 2 nu int diss_u + 2 eta int diff_b - E(0)| / E(0) with
/// E = ||u||^2 + ||b||^2 (absolute when E(0) = 0). Needs >= 2 records.
double energy_budget_residual(const std::vector<DiagnosticsRecord>& series,
                              const SolverConfig& config);

/// ||f||_inf / (||f||_2^{(beta-1)/beta} ||Lambda^beta f||_2^{1/beta}).
/// Requires beta > 1 and a nonzero zero-mean f.
double gn_ratio(const SpectralField& f, double beta);

/// Exponents of the commutator estimate
/// ||Lambda^s(fg) - f Lambda^s g||_p
///   <= c (||grad f||_p1 ||Lambda^{s-1} g||_p2 + ||Lambda^s f||_p3 ||g||_p4).
/// Each exponent is 2, 4 or infinity with 1/p = 1/p1 + 1/p2 = 1/p3 + 1/p4;
/// p, p2 and p3 must be finite.
struct CommutatorExponents {
  double p = 2.0;
  double p1 = INFINITY;
  double p2 = 2.0;
  double p3 = 2.0;
  double p4 = INFINITY;

  void validate() const;
};

/// Left side over right side with c = 1; 0 when the left side vanishes.
/// Products are formed without aliasing on a padded grid.
double commutator_ratio(const SpectralField& f, const SpectralField& g,
                        double s, const CommutatorExponents& exps = {});

/// lhs = 2 int |Lambda^alpha (f^{p/2})|^2, rhs = p int |f|^{p-2} f Lambda^{2 alpha} f,
/// both exact (powers formed without aliasing, integrals by Plancherel).
/// Requires alpha in [0, 1], p even >= 2, and f >= 0 when p > 2.
struct PositivityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
};
PositivityCheck positivity_check(const SpectralField& f, int p, double alpha);

/// ||grad u||_p / ||w||_p with u = biot_savart(w), gradient length taken
/// pointwise (Frobenius). p finite, >= 2.
double cz_ratio(const SpectralField& w, double p);

enum class Regime { kTheorem11, kTheorem12, kTheorem51, kOutside };
std::string to_string(Regime regime);

/// theorem-1.1: nu = 0, eta > 0, alpha = 0, beta > 3/2.
/// theorem-1.2: nu, eta > 0, alpha in (0, 1/2), beta in (5/4, 3/2],
///              alpha + 2 beta > 3.
/// theorem-5.1: nu, eta > 0, alpha >= 1/2, beta >= 1.
Regime classify_regime(double alpha, double beta, double nu, double eta);
Regime classify_regime(const SolverConfig& config);

struct QuantitySummary {
  std::string name;
  double initial = 0.0;
  double final = 0.0;
  double sup = 0.0;
  double t_at_sup = 0.0;
  // The final sample is the run maximum and exceeds the initial value by
  // more than 1%.
  bool growing = false;
};

struct RegimeReport {
  Regime regime = Regime::kOutside;
  // Set when beta = 0 or eta = 0 (ideal-type baselines).
  bool baseline = false;
  std::vector<QuantitySummary> quantities;
  // Theorem 1.2 only.
  bool has_gamma = false;
  double gamma = 0.0;
  double sup_lgamma_b = 0.0;
  bool gamma_plus_beta_gt_3 = false;
};

RegimeReport regime_report(const std::vector<DiagnosticsRecord>& series,
                           const SolverConfig& config);

}  // namespace mhd2d

#endif  // MHD2D_DIAGNOSTICS_HPP_
