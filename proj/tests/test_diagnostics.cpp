#include <cmath>

#include "doctest.h"
#include "mhd2d/diagnostics.hpp"
#include "mhd2d/random_fields.hpp"
#include "mhd2d/run.hpp"

using namespace mhd2d;

namespace {

SpectralField sine_mode(const TorusGrid& g, int k1, int k2, double amp = 1.0) {
  return cosine_mode(g, k1, k2, amp, -M_PI / 2);
}

SpectralField sin_sin(const TorusGrid& g) {
  // sin x1 sin x2 = (cos(x1 - x2) - cos(x1 + x2)) / 2
  return cosine_mode(g, 1, -1, 0.5) - cosine_mode(g, 1, 1, 0.5);
}

SolverConfig config_for(int n) {
  SolverConfig c;
  c.n = n;
  c.alpha = 0.6;
  c.beta = 1.2;
  c.nu = 0.1;
  c.eta = 0.2;
  return c;
}

}  // namespace

TEST_CASE("record of the zero state") {
  const TorusGrid g(16);
  const DiagnosticsRecord r = compute_record(MHDState(g), config_for(16));
  for (double v : {r.energy_u, r.energy_b, r.X, r.diss_u, r.diff_b, r.hbeta_b,
                   r.h2beta_b, r.linf_w, r.linf_grad_u, r.lgamma_b}) {
    CHECK(v == 0.0);
  }
  for (double v : r.lp_w) CHECK(v == 0.0);
}

TEST_CASE("record closed forms") {
  const TorusGrid g(32);
  MHDState s(g);
  s.w = sin_sin(g);
  DiagnosticsRecord r = compute_record(s, config_for(32));
  CHECK(r.energy_u == doctest::Approx(M_PI * M_PI / 2).epsilon(1e-14));
  CHECK(r.energy_b == 0.0);
  CHECK(r.X == doctest::Approx(M_PI * M_PI).epsilon(1e-14));
  CHECK(r.lp_w[0] * r.lp_w[0] == doctest::Approx(r.X).epsilon(1e-14));
  CHECK(r.linf_w == doctest::Approx(1.0).epsilon(1e-12));
  // ||Lambda^a u||^2 = 2^a ||u||^2 for |xi|^2 = 2.
  CHECK(r.diss_u == doctest::Approx(std::pow(2.0, 0.6) * r.energy_u).epsilon(1e-14));
  // ||w||_4^4 = (3 pi / 4)^2
  CHECK(std::pow(r.lp_w[1], 4) == doctest::Approx(9 * M_PI * M_PI / 16).epsilon(1e-12));
  // |grad u|^2 = (cos^2 x1 cos^2 x2 + sin^2 x1 sin^2 x2) / 2, largest at 0.
  CHECK(r.linf_grad_u == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));

  // b single mode with |xi| = 2 and beta = 1.5.
  SolverConfig c = config_for(32);
  c.beta = 1.5;
  MHDState sb(g);
  sb.j = cosine_mode(g, 2, 0, 1.0);
  r = compute_record(sb, c);
  CHECK(r.hbeta_b == doctest::Approx(8.0 * r.energy_b).epsilon(1e-14));
  CHECK(r.h2beta_b == doctest::Approx(64.0 * r.energy_b).epsilon(1e-14));
  CHECK(r.diff_b == r.hbeta_b);
  CHECK(r.lgamma_b * r.lgamma_b ==
        doctest::Approx(std::pow(4.0, 1.5 + 0.3) * r.energy_b).epsilon(1e-14));
}

TEST_CASE("||Lambda^{s-1} j|| = ||Lambda^s b|| for divergence-free b") {
  const TorusGrid g(64);
  const auto j = random_field(g, {.band = 21}, 4);
  const auto b = biot_savart(j);
  for (double s : {0.5, 1.0, 1.6, 2.7}) {
    const double lhs = l2_norm(lambda_power(j, s - 1.0));
    const double rhs = std::sqrt(l2_norm_sq(lambda_power(b[0], s)) +
                                 l2_norm_sq(lambda_power(b[1], s)));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
  }
}

TEST_CASE("Gagliardo-Nirenberg ratio") {
  const TorusGrid g(64);
  for (int k : {1, 2, 5}) {
    const auto f = cosine_mode(g, k, 0, 1.0);
    CHECK(gn_ratio(f, 1.6) == doctest::Approx(1.0 / (M_PI * std::sqrt(2.0) * k)).epsilon(1e-12));
  }
  const auto r = random_field(g, {.band = 20}, 2);
  const double base = gn_ratio(r, 1.6);
  for (double lam : {1e-3, 7.0, 1e5}) {
    CHECK(gn_ratio(lam * r, 1.6) == doctest::Approx(base).epsilon(1e-13));
  }
  CHECK_THROWS_AS(gn_ratio(r, 1.0), Error);
  CHECK_THROWS_AS(gn_ratio(SpectralField(g), 1.6), Error);
  CHECK_THROWS_AS(gn_ratio(r + constant_field(g, 1.0), 1.6), Error);
}

TEST_CASE("commutator ratio") {
  const TorusGrid g(32);
  const auto c = cosine_mode(g, 1, 0, 1.0);
  // f = g = cos x1, s = 1: the commutator is (cos 2x1 - 1) / 2, the right
  // side is 1 * ||cos||_2 + ||cos||_2 * 1.
  CHECK(commutator_ratio(c, c, 1.0) == doctest::Approx(std::sqrt(3.0) / 4.0).epsilon(1e-12));

  const auto r = random_field(g, {.band = 10}, 3);
  CHECK(commutator_ratio(constant_field(g, 2.5), r, 1.5) == 0.0);

  const auto f = random_field(g, {.band = 10}, 5);
  const double base = commutator_ratio(f, r, 1.5);
  CHECK(std::isfinite(base));
  CHECK(base > 0.0);
  CHECK(commutator_ratio(3.0 * f, 0.5 * r, 1.5) == doctest::Approx(base).epsilon(1e-12));
  CHECK(std::isfinite(commutator_ratio(f, r, 2.0, {.p = 2, .p1 = 4, .p2 = 4, .p3 = 4, .p4 = 4})));
  CHECK(std::isfinite(commutator_ratio(f, r, 1.0, {.p = 4, .p1 = INFINITY, .p2 = 4, .p3 = 4, .p4 = INFINITY})));

  CHECK_THROWS_AS(commutator_ratio(f, r, 1.0, {.p = 2, .p1 = 2, .p2 = 2}), Error);
  CHECK_THROWS_AS(commutator_ratio(f, r, 1.0, {.p = INFINITY, .p1 = INFINITY, .p2 = INFINITY, .p3 = INFINITY, .p4 = INFINITY}), Error);
  CHECK_THROWS_AS(commutator_ratio(f, r, 1.0, {.p = 2, .p1 = 3, .p2 = 6}), Error);
  CHECK_THROWS_AS(commutator_ratio(f, r, 0.0), Error);
}

TEST_CASE("positivity lemma") {
  const TorusGrid g(32);
  const auto f = random_field(g, {.band = 8}, 6);
  for (double a : {0.0, 0.3, 1.0}) {
    const PositivityCheck pc = positivity_check(f, 2, a);
    CHECK(pc.lhs == doctest::Approx(pc.rhs).epsilon(1e-12));
  }

  const auto h = random_field(g, {.band = 5}, 7);
  const auto sq = exact_product(h, h);
  const PositivityCheck p0 = positivity_check(sq, 4, 0.0);
  CHECK(p0.lhs == doctest::Approx(0.5 * p0.rhs).epsilon(1e-12));
  // Oracle for 2 int f^4 on a fine grid.
  const double f4 = std::pow(lp_norm(sq, 4.0), 4);
  CHECK(p0.lhs == doctest::Approx(2.0 * f4).epsilon(1e-10));

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto k = random_field(g, {.band = 5}, seed);
    const PositivityCheck pc = positivity_check(exact_product(k, k), 4, 0.5);
    CHECK(pc.lhs <= pc.rhs * (1 + 1e-10));
  }
  CHECK_THROWS_AS(positivity_check(f, 4, 0.5), Error);
  CHECK_THROWS_AS(positivity_check(sq, 3, 0.5), Error);
  CHECK_THROWS_AS(positivity_check(sq, 4, 1.5), Error);
}

TEST_CASE("Calderon-Zygmund ratio") {
  const TorusGrid g(64);
  const auto r = random_field(g, {.band = 20}, 9);
  CHECK(cz_ratio(r, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cz_ratio(sin_sin(g), 4.0) == doctest::Approx(std::pow(5.0 / 9.0, 0.25)).epsilon(1e-12));
  const double r8 = cz_ratio(r, 8.0);
  CHECK(cz_ratio(42.0 * r, 8.0) == doctest::Approx(r8).epsilon(1e-13));
  CHECK_THROWS_AS(cz_ratio(SpectralField(g), 4.0), Error);
  CHECK_THROWS_AS(cz_ratio(r, INFINITY), Error);
}

TEST_CASE("regime classification on boundary probes") {
  CHECK(classify_regime(0.0, 1.6, 0.0, 1.0) == Regime::kTheorem11);
  CHECK(classify_regime(0.0, 1.5, 0.0, 1.0) == Regime::kOutside);
  CHECK(classify_regime(0.0, 1.5 + 1e-9, 0.0, 1.0) == Regime::kTheorem11);
  CHECK(classify_regime(0.0, 1.6, 0.0, 0.0) == Regime::kOutside);
  CHECK(classify_regime(0.0, 1.3, 0.0, 1.0) == Regime::kOutside);
  CHECK(classify_regime(0.5, 1.0, 1.0, 1.0) == Regime::kTheorem51);
  CHECK(classify_regime(0.5, 1.0, 0.0, 1.0) == Regime::kOutside);
  CHECK(classify_regime(0.3, 1.4, 1.0, 1.0) == Regime::kTheorem12);
  CHECK(classify_regime(0.3, 1.5, 1.0, 1.0) == Regime::kTheorem12);
  CHECK(classify_regime(0.3, 1.51, 1.0, 1.0) == Regime::kOutside);
  CHECK(classify_regime(0.2, 1.4, 1.0, 1.0) == Regime::kOutside);  // 3.0, not > 3
  CHECK(classify_regime(0.45, 1.25, 1.0, 1.0) == Regime::kOutside);
  CHECK(classify_regime(0.49, 1.3, 1.0, 1.0) == Regime::kTheorem12);
  CHECK(to_string(Regime::kTheorem12) == "theorem-1.2");
}

TEST_CASE("run cadence, remainder step and determinism") {
  SolverConfig c = config_for(32);
  c.dt = 1e-2;
  c.t_end = 0.0;
  const TorusGrid g(32);
  const MHDState init = make_initial(InitialKind::kRandomBand, g, 3, 1.0, 8);
  RunResult r = run(c, init);
  CHECK(r.records.size() == 1);
  CHECK(r.steps == 0);

  c.t_end = 0.255;
  c.output_every = 10;
  int seen = 0;
  r = run(c, init, [&](const MHDState&, const DiagnosticsRecord&) { ++seen; });
  CHECK_FALSE(r.aborted);
  CHECK(r.steps == 26);
  CHECK(r.final_state.t == 0.255);
  REQUIRE(r.records.size() == 4);
  CHECK(seen == 4);
  CHECK(r.records[1].t == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(r.records[2].t == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(r.records[3].t == 0.255);
  CHECK(r.final_state.w.mean_coefficient() == 0.0);

  const RunResult again = run(c, init);
  CHECK(max_abs_diff(again.final_state.w, r.final_state.w) == 0.0);
  CHECK(again.records.back().int_diff_b == r.records.back().int_diff_b);
}

TEST_CASE("budget residual on pure diffusion and on a nonlinear run") {
  const TorusGrid g(32);
  SolverConfig c = config_for(32);
  c.nu = 0.0;
  c.alpha = 0.0;
  c.eta = 1.0;
  c.beta = 1.0;
  c.dt = 1e-3;
  c.t_end = 0.5;
  c.output_every = 50;
  MHDState s(g);
  s.j = cosine_mode(g, 2, 0, 1.0);
  RunResult r = run(c, s);
  CHECK(energy_budget_residual(r.records, c) < 1e-10);
  // Exact decay of the single mode.
  CHECK(r.records.back().energy_b ==
        doctest::Approx(r.records.front().energy_b * std::exp(-8.0 * 0.5)).epsilon(1e-10));
  RegimeReport rep = regime_report(r.records, c);
  CHECK(rep.quantities[2].name == "hbeta_b");
  CHECK(rep.quantities[2].t_at_sup == 0.0);
  CHECK_FALSE(rep.quantities[2].growing);

  c = config_for(32);
  c.dt = 2e-3;
  c.t_end = 0.2;
  r = run(c, make_initial(InitialKind::kRandomBand, g, 1, 2.0, 8));
  CHECK(energy_budget_residual(r.records, c) < 1e-8);
  CHECK_THROWS_AS(energy_budget_residual({r.records[0]}, c), Error);
}

TEST_CASE("regime report") {
  SolverConfig c = config_for(32);
  const RegimeReport zero = regime_report({DiagnosticsRecord{}, DiagnosticsRecord{}}, c);
  for (const auto& q : zero.quantities) CHECK(q.sup == 0.0);
  CHECK(zero.regime == Regime::kTheorem51);

  c.alpha = 0.3;
  c.beta = 1.4;
  const TorusGrid g(32);
  c.dt = 5e-3;
  c.t_end = 0.05;
  const RunResult r = run(c, make_initial(InitialKind::kOrszagTang, g, 0, 1.0, 8));
  const RegimeReport rep = regime_report(r.records, c);
  CHECK(rep.regime == Regime::kTheorem12);
  CHECK(rep.has_gamma);
  CHECK(rep.gamma == doctest::Approx(1.55));
  CHECK_FALSE(rep.gamma_plus_beta_gt_3);  // 1.55 + 1.4
  CHECK(rep.sup_lgamma_b > 0.0);
  c.beta = 1.5;
  CHECK(regime_report(r.records, c).gamma_plus_beta_gt_3);  // 1.65 + 1.5

  SolverConfig ideal = config_for(32);
  ideal.nu = ideal.eta = ideal.alpha = 0.0;
  CHECK(regime_report(r.records, ideal).baseline);
}

TEST_CASE("run aborts cleanly") {
  const TorusGrid g(32);
  SolverConfig c = config_for(32);
  c.nu = c.eta = c.alpha = 0.0;
  c.dt = 0.5;  // far above the advective bound
  c.t_end = 1.0;
  const MHDState init = make_initial(InitialKind::kOrszagTang, g, 0, 1.0, 8);
  const RunResult r = run(c, init);
  CHECK(r.aborted);
  CHECK(r.steps == 0);
  CHECK(r.records.size() == 1);
  CHECK(r.abort_reason.find("advective") != std::string::npos);
  CHECK(max_abs_diff(r.final_state.w, init.w) == 0.0);
}
