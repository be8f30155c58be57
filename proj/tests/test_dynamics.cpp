#include <cmath>

#include "doctest.h"
#include "mhd2d/dynamics.hpp"
#include "mhd2d/random_fields.hpp"

using namespace mhd2d;

namespace {

SolverConfig dissipative_config(int n) {
  SolverConfig c;
  c.n = n;
  c.alpha = 0.4;
  c.beta = 1.3;
  c.nu = 0.05;
  c.eta = 0.1;
  return c;
}

MHDState random_state(const TorusGrid& g, std::uint64_t seed, double amp = 1.0) {
  return make_initial(InitialKind::kRandomBand, g, seed, amp, g.dealias_cutoff());
}

double rel_l2(const MHDState& a, const MHDState& b) {
  const double num = std::sqrt(l2_norm_sq(a.w - b.w) + l2_norm_sq(a.j - b.j));
  const double den = std::sqrt(l2_norm_sq(a.w) + l2_norm_sq(a.j));
  return num / den;
}

}  // namespace

TEST_CASE("zero state has zero right-hand sides and stays zero") {
  const TorusGrid g(32);
  const MHDState z(g);
  const CurlRhs r = vorticity_rhs(z);
  CHECK(max_abs(r.dw) == 0.0);
  CHECK(max_abs(r.dj) == 0.0);
  SolverConfig c = dissipative_config(32);
  c.dt = 1e-2;
  const MHDState s = step(z, c);
  CHECK(max_abs(s.w) == 0.0);
  CHECK(max_abs(s.j) == 0.0);
  CHECK(s.t == doctest::Approx(0.01));
}

TEST_CASE("parallel shear is a steady state of the nonlinear terms") {
  const TorusGrid g(32);
  MHDState s(g);
  // u = (sin x2, 0)  =>  w = -cos x2
  s.w = cosine_mode(g, 0, 1, -1.0);
  const PrimitiveState p = to_primitive(s);
  CHECK(max_abs(p.u[1]) < 1e-12);
  CHECK(max_rel_diff(p.u[0], cosine_mode(g, 0, 1, 1.0, -M_PI / 2)) < 1e-14);
  const CurlRhs r = vorticity_rhs(s);
  CHECK(max_abs(r.dw) < 1e-10);
  CHECK(max_abs(r.dj) < 1e-10);
}

TEST_CASE("curl of the primitive form equals the curl form") {
  const TorusGrid g(128);
  const SolverConfig c = dissipative_config(128);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const MHDState s = random_state(g, seed);
    const PrimitiveState dp = primitive_rhs(to_primitive(s), c);
    const CurlRhs nl = vorticity_rhs(s);
    const CurlRhs lin = linear_rhs(s, c);
    CHECK(max_rel_diff(curl(dp.u), nl.dw + lin.dw) < 1e-10);
    CHECK(max_rel_diff(curl(dp.b), nl.dj + lin.dj) < 1e-10);
  }
}

TEST_CASE("flux and bracket forms agree on dealiased states") {
  for (int n : {32, 128}) {
    const TorusGrid g(n);
    const SolverConfig c = dissipative_config(n);
    for (std::uint64_t seed = 11; seed <= 13; ++seed) {
      const MHDState s = random_state(g, seed, 3.0);
      const CurlRhs a = vorticity_rhs(s, RhsForm::kBracket);
      const CurlRhs b = vorticity_rhs(s, RhsForm::kFlux);
      CHECK(max_rel_diff(a.dw, b.dw) < 1e-12);
      CHECK(max_rel_diff(a.dj, b.dj) < 1e-12);
      const PrimitiveState dp = primitive_rhs(to_primitive(s), c);
      const CurlRhs lin = linear_rhs(s, c);
      CHECK(max_rel_diff(curl(dp.b), b.dj + lin.dj) < 1e-10);
    }
  }
}

TEST_CASE("the current-equation bracket term is needed for equivalence") {
  // Dropping it must break the identity, otherwise the check above is vacuous.
  const TorusGrid g(64);
  const MHDState s = random_state(g, 9);
  const PrimitiveState dp = primitive_rhs(to_primitive(s), SolverConfig{});
  const PrimitiveState p = to_primitive(s);
  const auto u1 = p.u[0], u2 = p.u[1], b1 = p.b[0], b2 = p.b[1];
  const SpectralField bracket =
      2.0 * (dealiased_product(partial_derivative(b1, 1),
                               partial_derivative(u2, 1) + partial_derivative(u1, 2)) -
             dealiased_product(partial_derivative(u1, 1),
                               partial_derivative(b2, 1) + partial_derivative(b1, 2)));
  const CurlRhs nl = vorticity_rhs(s);
  CHECK(max_rel_diff(curl(dp.b), nl.dj) < 1e-10);
  CHECK(max_rel_diff(curl(dp.b), nl.dj - bracket) > 1e-3);
}

TEST_CASE("Alfvenic states: nonlinearities cancel when u = b") {
  const TorusGrid g(64);
  const SolverConfig c = dissipative_config(64);
  const MHDState s0 = random_state(g, 4);
  const PrimitiveState p{biot_savart(s0.w), biot_savart(s0.w)};
  const PrimitiveState d = primitive_rhs(p, c);
  for (int k = 0; k < 2; ++k) {
    const auto du = -c.nu * fractional_laplacian(p.u[k], c.alpha);
    const auto db = -c.eta * fractional_laplacian(p.b[k], c.beta);
    CHECK(max_abs_diff(d.u[k], du) < 1e-10 * max_abs(p.u[k]));
    CHECK(max_abs_diff(d.b[k], db) < 1e-10 * max_abs(p.u[k]));
  }
}

TEST_CASE("u = 0 with a cellular magnetic field") {
  // b = (1/2 sin x1 cos x2, -1/2 cos x1 sin x2): (b.grad)b is a gradient.
  const TorusGrid g(32);
  SolverConfig c = dissipative_config(32);
  MHDState s(g);
  s.j = cosine_mode(g, 1, 1, -0.5) + cosine_mode(g, 1, -1, 0.5);
  const PrimitiveState p = to_primitive(s);
  const PrimitiveState d = primitive_rhs(p, c);
  CHECK(max_abs(d.u[0]) < 1e-10);
  CHECK(max_abs(d.u[1]) < 1e-10);
  for (int k = 0; k < 2; ++k) {
    const auto db = -c.eta * fractional_laplacian(p.b[k], c.beta);
    CHECK(max_abs_diff(d.b[k], db) < 1e-10);
  }
}

TEST_CASE("primitive outputs are divergence-free") {
  const TorusGrid g(64);
  const SolverConfig c = dissipative_config(64);
  const MHDState s = random_state(g, 12);
  const PrimitiveState d = primitive_rhs(to_primitive(s), c);
  CHECK(max_abs(divergence(d.u)) / max_abs(d.u[0]) < 1e-13);
  CHECK(max_abs(divergence(d.b)) / max_abs(d.b[0]) < 1e-13);
}

TEST_CASE("Leray projection") {
  const TorusGrid g(64);
  const auto phi = random_field(g, {.band = 20}, 2);
  const SpectralVector grad = gradient(phi);
  const SpectralVector pg = leray_project(grad);
  CHECK(max_abs(pg[0]) < 1e-12 * max_abs(grad[0]));
  CHECK(max_abs(pg[1]) < 1e-12 * max_abs(grad[0]));

  const SpectralVector u = biot_savart(random_field(g, {.band = 20}, 3));
  const SpectralVector pu = leray_project(u);
  CHECK(max_rel_diff(pu[0], u[0]) < 1e-14);
  CHECK(max_rel_diff(pu[1], u[1]) < 1e-14);

  SpectralVector v = {random_field(g, {.band = 30}, 4) + constant_field(g, 1.5),
                      random_field(g, {.band = 30}, 5)};
  const SpectralVector p1 = leray_project(v);
  const SpectralVector p2 = leray_project(p1);
  CHECK(max_abs(divergence(p1)) / max_abs(p1[0]) < 1e-13);
  CHECK(max_rel_diff(p2[0], p1[0]) < 1e-14);
  CHECK(max_rel_diff(p2[1], p1[1]) < 1e-14);
  CHECK(p1[0].mean_coefficient() == v[0].mean_coefficient());
}

TEST_CASE("integrating factor is exact on pure diffusion") {
  const TorusGrid g(32);
  SolverConfig c;
  c.n = 32;
  c.eta = 1.0;
  c.beta = 1.0;
  c.dt = 0.01;
  MHDState s(g);
  // b = (0, sin 2 x1): j = 2 cos 2 x1, |xi| = 2
  s.j = cosine_mode(g, 2, 0, 2.0);
  const MHDState s1 = step(s, c);
  CHECK(max_abs(s1.w) == 0.0);
  CHECK(max_abs_diff(s1.j, std::exp(-4.0 * c.dt) * s.j) < 1e-13 * max_abs(s.j));
}

TEST_CASE("stepper keeps the mean zero, Hermitian and dealiased") {
  const TorusGrid g(64);
  SolverConfig c = dissipative_config(64);
  c.dt = 2e-3;
  IntegratingFactorRK4 rk(c, g, c.dt);
  MHDState s = random_state(g, 8);
  for (int i = 0; i < 5; ++i) s = rk.advance(s).state;
  CHECK(s.w.mean_coefficient() == 0.0);
  CHECK(s.j.mean_coefficient() == 0.0);
  CHECK(s.w.hermitian_defect() < 1e-10 * max_abs(s.w));
  CHECK(is_dealiased(s.w));
  CHECK(is_dealiased(s.j));
}

TEST_CASE("instability detector aborts") {
  const TorusGrid g(32);
  SolverConfig c;
  c.n = 32;
  c.dt = 5.0;  // far beyond any stable step
  const MHDState s = make_initial(InitialKind::kOrszagTang, g, 0, 5.0, 4);
  CHECK_THROWS_AS(step(s, c), SimulationAbort);
}

TEST_CASE("ideal flow conserves energy") {
  const TorusGrid g(32);
  SolverConfig c;
  c.n = 32;
  c.dt = 1e-3;
  IntegratingFactorRK4 rk(c, g, c.dt);
  MHDState s = make_initial(InitialKind::kOrszagTang, g, 0, 1.0, 8);
  const double e0 = total_energy(s);
  for (int i = 0; i < 100; ++i) s = rk.advance(s).state;
  CHECK(std::abs(total_energy(s) - e0) / e0 < 1e-10);
}

TEST_CASE("dissipation quadrature closes the energy budget") {
  const TorusGrid g(32);
  SolverConfig c = dissipative_config(32);
  c.dt = 1e-3;
  IntegratingFactorRK4 rk(c, g, c.dt);
  MHDState s = make_initial(InitialKind::kOrszagTang, g, 0, 1.0, 8);
  const double e0 = total_energy(s);
  double iu = 0.0, ib = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto r = rk.advance(s);
    iu += r.increments.diss_u;
    ib += r.increments.diff_b;
    s = r.state;
  }
  const double residual =
      std::abs(total_energy(s) + 2.0 * c.nu * iu + 2.0 * c.eta * ib - e0) / e0;
  CHECK(residual < 1e-9);
}

TEST_CASE("fourth-order self-convergence") {
  const TorusGrid g(64);
  SolverConfig c = dissipative_config(64);
  const MHDState s0 = make_initial(InitialKind::kOrszagTang, g, 0, 1.0, 8);
  auto evolve = [&](double dt) {
    IntegratingFactorRK4 rk(c, g, dt);
    MHDState s = s0;
    const int steps = int(std::lround(0.5 / dt));
    for (int i = 0; i < steps; ++i) s = rk.advance(s).state;
    return s;
  };
  const MHDState a = evolve(0.02), b = evolve(0.01), d = evolve(0.005);
  const double ratio = rel_l2(a, b) / rel_l2(b, d);
  CHECK(ratio == doctest::Approx(16.0).epsilon(0.2));
}

TEST_CASE("initial data") {
  const TorusGrid g(64);
  const MHDState z = make_initial(InitialKind::kRandomBand, g, 3, 0.0, 10);
  CHECK(max_abs(z.w) == 0.0);
  CHECK(max_abs(z.j) == 0.0);

  const MHDState ot = make_initial(InitialKind::kOrszagTang, g, 0, 1.5, 8);
  // ||cos x1 + cos x2||^2 = 4 pi^2 ; ||2 cos 2x1 + cos x2||^2 = 10 pi^2
  CHECK(l2_norm(ot.w) == doctest::Approx(1.5 * 2.0 * M_PI).epsilon(1e-14));
  CHECK(l2_norm(ot.j) == doctest::Approx(1.5 * std::sqrt(10.0) * M_PI).epsilon(1e-14));
  // u = 1.5 (-sin x2, sin x1)
  const PrimitiveState p = to_primitive(ot);
  CHECK(max_abs_diff(p.u[0], cosine_mode(g, 0, 1, 1.5, M_PI / 2)) < 1e-10);
  CHECK(max_abs_diff(p.u[1], cosine_mode(g, 1, 0, 1.5, -M_PI / 2)) < 1e-10);

  const MHDState r1 = make_initial(InitialKind::kRandomBand, g, 42, 1.0, 12);
  const MHDState r2 = make_initial(InitialKind::kRandomBand, g, 42, 1.0, 12);
  CHECK((r1.w.coeffs() == r2.w.coeffs()).all());
  CHECK((r1.j.coeffs() == r2.j.coeffs()).all());
  CHECK(r1.w.mean_coefficient() == 0.0);
  CHECK(r1.w.band() == 12);
  CHECK(std::abs(l2_norm(r1.w) / (2.0 * M_PI) - 1.0) < 1e-14);
  CHECK_THROWS_AS(make_initial(InitialKind::kRandomBand, g, 1, 1.0, 22), Error);
}

TEST_CASE("rescale") {
  const TorusGrid g(64);
  const MHDState s = make_initial(InitialKind::kRandomBand, g, 5, 1.0, 10);
  const MHDState same = rescale(s, 1, 0.8);
  CHECK(max_abs_diff(same.w, s.w) == 0.0);
  CHECK(same.t == s.t);

  // Velocity mode at (1, 0) with amplitude a: u = (0, a cos x1), w = -a sin x1.
  const double a = 0.7;
  MHDState v(g);
  v.t = 0.4;
  v.w = cosine_mode(g, 1, 0, a, M_PI / 2);
  const MHDState r = rescale(v, 2, 1.0);
  const SpectralVector u = biot_savart(r.w);
  CHECK(max_abs_diff(u[1], cosine_mode(g, 2, 0, 2.0 * a)) < 1e-12);
  CHECK(r.t == doctest::Approx(0.1));

  CHECK_THROWS_AS(rescale(s, 3, 1.0), Error);
  CHECK_THROWS_AS(rescale(s, 0, 1.0), Error);
}

TEST_CASE("config validation") {
  SolverConfig c;
  c.beta = 1.6;
  c.eta = 1.0;
  CHECK_NOTHROW(c.validate());
  c.beta = -1.0;
  CHECK_THROWS_AS(c.validate(), Error);
  c.beta = 1.6;
  c.alpha = 0.3;  // nu = 0
  CHECK_THROWS_AS(c.validate(), Error);
  c.alpha = 0.0;
  c.dt = 0.0;
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("advective step bound") {
  const TorusGrid g(64);
  CHECK(std::isinf(advective_dt_bound(MHDState(g))));
  const MHDState ot = make_initial(InitialKind::kOrszagTang, g, 0, 1.0, 8);
  // max |b| for b = (-sin x2, sin 2x1) is sqrt(2)
  CHECK(advective_dt_bound(ot) == doctest::Approx(0.5 * g.spacing() / std::sqrt(2.0)).epsilon(1e-12));
}
