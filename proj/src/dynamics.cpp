#include "mhd2d/dynamics.hpp"

#include <cmath>
#include <limits>

#include "half_spectrum.hpp"
#include "mhd2d/random_fields.hpp"

namespace mhd2d {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

bool finite_number(double x) { return std::isfinite(x); }

SpectralField zero_mean(SpectralField F) {
  F.coeffs()(0, 0) = 0.0;
  return F;
}

SpectralField from_physical(const RealField& f, double t, const char* what) {
  if (!f.all_finite()) {
    throw SimulationAbort(t, std::string("non-finite value in ") + what);
  }
  return dealias(forward(f));
}

// Plancherel weight (2 pi)^2 / n^4 times |xi|^{2p} for xi != 0.
RealArray norm_weight(const TorusGrid& g, double p) {
  const double n2 = double(g.n()) * g.n();
  RealArray w = g.ksq().pow(p) * (kTwoPi * kTwoPi / (n2 * n2));
  w(0, 0) = 0.0;
  return w;
}

double weighted_sum(const RealArray& weight, const SpectralField& F) {
  return (weight * F.coeffs().abs2()).sum();
}

ComplexArray times(const RealArray& a, const ComplexArray& c) {
  ComplexArray out(c.rows(), c.cols());
  for (Eigen::Index q = 0; q < c.size(); ++q) out(q) = a(q) * c(q);
  return out;
}

}  // namespace

std::string to_string(Integrator integrator) {
  switch (integrator) {
    case Integrator::kIntegratingFactorRK4:
      return "ifrk4";
  }
  return "unknown";
}

std::string to_string(InitialKind kind) {
  switch (kind) {
    case InitialKind::kOrszagTang:
      return "orszag-tang";
    case InitialKind::kRandomBand:
      return "random-band";
  }
  return "unknown";
}

void SolverConfig::validate() const {
  auto fail = [](const std::string& m) { throw Error("invalid config: " + m); };
  if (!finite_number(alpha) || alpha < 0.0) fail("alpha must be finite and >= 0");
  if (!finite_number(beta) || beta < 0.0) fail("beta must be finite and >= 0");
  if (!finite_number(nu) || nu < 0.0) fail("nu must be finite and >= 0");
  if (!finite_number(eta) || eta < 0.0) fail("eta must be finite and >= 0");
  if (nu == 0.0 && alpha != 0.0) fail("alpha must be recorded as 0 when nu = 0");
  if (n < 8 || (n & (n - 1)) != 0) fail("n must be a power of two >= 8");
  if (!finite_number(dt) || dt <= 0.0) fail("dt must be > 0");
  if (!finite_number(t_end) || t_end < 0.0) fail("t_end must be >= 0");
  if (output_every < 1) fail("output_every must be >= 1");
  if (!finite_number(amplitude) || amplitude < 0.0) fail("amplitude must be >= 0");
  if (band < 1 || band > n / 3) fail("band must lie in [1, n/3]");
}

SimulationAbort::SimulationAbort(double t, const std::string& why)
    : Error("simulation aborted at t = " + std::to_string(t) + ": " + why),
      time_(t) {}

PrimitiveState to_primitive(const MHDState& state) {
  return {biot_savart(state.w), biot_savart(state.j)};
}

MHDState to_curl_form(const PrimitiveState& p, double t) {
  return MHDState(t, zero_mean(curl(p.u)), zero_mean(curl(p.b)));
}

namespace {

struct HalfPair {
  ComplexArray w, j;
};

HalfPair finish(const TorusGrid& g, const RealArray& dw, const RealArray& dj,
               double t) {
  if (!dw.isFinite().all()) throw SimulationAbort(t, "non-finite value in vorticity equation");
  if (!dj.isFinite().all()) throw SimulationAbort(t, "non-finite value in current equation");
  HalfPair out;
  detail::forward_half(g, dw, out.w);
  detail::forward_half(g, dj, out.j);
  out.w = times(g.data().hkeep, out.w);
  out.j = times(g.data().hkeep, out.j);
  out.w(0, 0) = 0.0;
  out.j(0, 0) = 0.0;
  return out;
}

// Nonlinear curl-form terms on half spectra, bracket form. Inputs on the
// Nyquist lines are ignored; the output is dealiased with a zero mean.
HalfPair bracket_half(const TorusGrid& g, const ComplexArray& wh,
                        const ComplexArray& jh, double t) {
  const detail::GridData& d = g.data();
  const int n = g.n();
  const int h = detail::half_cols(n);
  enum { U1, U2, B1, B2, W1, W2, J1, J2, D1U1, D1B1, SU, SB, kCount };
  // Reused across calls; fresh multi-megabyte allocations cost page faults.
  struct Workspace {
    ComplexArray spec[kCount];
    RealArray x[kCount];
    RealArray dw, dj;
  };
  thread_local Workspace ws;
  ComplexArray* spec = ws.spec;
  RealArray* x = ws.x;
  for (int q = 0; q < kCount; ++q) spec[q].resize(n, h);
  // Real-symbol products written out to keep complex multiplies inline.
  using C = std::complex<double>;
  auto times_i = [](double a, C z) { return C(-a * z.imag(), a * z.real()); };
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < h; ++c) {
      const double k1 = d.hk1(r, c), k2 = d.hk2(r, c), inv = d.hinv_ksq(r, c);
      const bool nyq = r == n / 2 || c == n / 2;
      const C W = nyq ? C(0.0) : wh(r, c);
      const C J = nyq ? C(0.0) : jh(r, c);
      spec[U1](r, c) = times_i(k2 * inv, W);
      spec[U2](r, c) = times_i(-k1 * inv, W);
      spec[B1](r, c) = times_i(k2 * inv, J);
      spec[B2](r, c) = times_i(-k1 * inv, J);
      spec[W1](r, c) = times_i(k1, W);
      spec[W2](r, c) = times_i(k2, W);
      spec[J1](r, c) = times_i(k1, J);
      spec[J2](r, c) = times_i(k2, J);
      spec[D1U1](r, c) = (-k1 * k2 * inv) * W;
      spec[D1B1](r, c) = (-k1 * k2 * inv) * J;
      spec[SU](r, c) = ((k1 * k1 - k2 * k2) * inv) * W;
      spec[SB](r, c) = ((k1 * k1 - k2 * k2) * inv) * J;
    }
  }
  for (int q = 0; q < kCount; ++q) detail::inverse_half(g, spec[q], x[q]);

  RealArray& dw = ws.dw;
  RealArray& dj = ws.dj;
  dw = -(x[U1] * x[W1] + x[U2] * x[W2]) + (x[B1] * x[J1] + x[B2] * x[J2]);
  dj = -(x[U1] * x[J1] + x[U2] * x[J2]) + (x[B1] * x[W1] + x[B2] * x[W2]) +
       2.0 * (x[D1B1] * x[SU] - x[D1U1] * x[SB]);
  return finish(g, dw, dj, t);
}

// Same terms in flux form, dw = -div(u w - b j), dj = -Lap(u1 b2 - u2 b1).
// For dealiased inputs the products are alias-free on the kept modes, so both
// forms agree to round-off; this one needs 9 transforms instead of 14.
HalfPair flux_half(const TorusGrid& g, const ComplexArray& wh,
                   const ComplexArray& jh, double t) {
  const detail::GridData& d = g.data();
  const int n = g.n();
  const int h = detail::half_cols(n);
  enum { U1, U2, B1, B2, W, J, kCount };
  struct Workspace {
    ComplexArray spec[kCount];
    RealArray x[kCount];
    RealArray f1, f2, e;
    ComplexArray f1h, f2h, eh;
  };
  thread_local Workspace ws;
  ComplexArray* spec = ws.spec;
  RealArray* x = ws.x;
  for (int q = 0; q < kCount; ++q) spec[q].resize(n, h);
  using C = std::complex<double>;
  auto times_i = [](double a, C z) { return C(-a * z.imag(), a * z.real()); };
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < h; ++c) {
      const double k1 = d.hk1(r, c), k2 = d.hk2(r, c), inv = d.hinv_ksq(r, c);
      const bool nyq = r == n / 2 || c == n / 2;
      const C w = nyq ? C(0.0) : wh(r, c);
      const C j = nyq ? C(0.0) : jh(r, c);
      spec[U1](r, c) = times_i(k2 * inv, w);
      spec[U2](r, c) = times_i(-k1 * inv, w);
      spec[B1](r, c) = times_i(k2 * inv, j);
      spec[B2](r, c) = times_i(-k1 * inv, j);
      spec[W](r, c) = w;
      spec[J](r, c) = j;
    }
  }
  for (int q = 0; q < kCount; ++q) detail::inverse_half(g, spec[q], x[q]);
  ws.f1 = x[U1] * x[W] - x[B1] * x[J];
  ws.f2 = x[U2] * x[W] - x[B2] * x[J];
  ws.e = x[U1] * x[B2] - x[U2] * x[B1];
  if (!ws.f1.isFinite().all() || !ws.f2.isFinite().all()) {
    throw SimulationAbort(t, "non-finite value in vorticity equation");
  }
  if (!ws.e.isFinite().all()) throw SimulationAbort(t, "non-finite value in current equation");
  detail::forward_half(g, ws.f1, ws.f1h);
  detail::forward_half(g, ws.f2, ws.f2h);
  detail::forward_half(g, ws.e, ws.eh);

  HalfPair out{ComplexArray(n, h), ComplexArray(n, h)};
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < h; ++c) {
      if (d.hkeep(r, c) == 0.0) {
        out.w(r, c) = out.j(r, c) = 0.0;
        continue;
      }
      const double k1 = d.hk1(r, c), k2 = d.hk2(r, c);
      out.w(r, c) = -(times_i(k1, ws.f1h(r, c)) + times_i(k2, ws.f2h(r, c)));
      out.j(r, c) = d.hksq(r, c) * ws.eh(r, c);
    }
  }
  out.w(0, 0) = 0.0;
  out.j(0, 0) = 0.0;
  return out;
}

}  // namespace

CurlRhs vorticity_rhs(const MHDState& state, RhsForm form) {
  const TorusGrid& g = state.grid();
  const auto eval = form == RhsForm::kBracket ? bracket_half : flux_half;
  const HalfPair r = eval(g, detail::to_half(state.w), detail::to_half(state.j),
                          state.t);
  return {detail::from_half(g, r.w, true), detail::from_half(g, r.j, true)};
}

CurlRhs linear_rhs(const MHDState& state, const SolverConfig& config) {
  SpectralField dw(state.grid());
  if (config.nu != 0.0) {
    dw = -config.nu * fractional_laplacian(state.w, config.effective_alpha());
  }
  SpectralField dj(state.grid());
  if (config.eta != 0.0) {
    dj = -config.eta * fractional_laplacian(state.j, config.beta);
  }
  return {zero_mean(std::move(dw)), zero_mean(std::move(dj))};
}

PrimitiveState primitive_rhs(const PrimitiveState& state,
                             const SolverConfig& config) {
  const TorusGrid& g = state.u[0].grid();
  RealField u[2] = {inverse(state.u[0]), inverse(state.u[1])};
  RealField b[2] = {inverse(state.b[0]), inverse(state.b[1])};
  // grad_u[k][i] = d_i u_k
  RealField grad_u[2][2] = {
      {inverse(partial_derivative(state.u[0], 1)),
       inverse(partial_derivative(state.u[0], 2))},
      {inverse(partial_derivative(state.u[1], 1)),
       inverse(partial_derivative(state.u[1], 2))}};
  RealField grad_b[2][2] = {
      {inverse(partial_derivative(state.b[0], 1)),
       inverse(partial_derivative(state.b[0], 2))},
      {inverse(partial_derivative(state.b[1], 1)),
       inverse(partial_derivative(state.b[1], 2))}};

  auto advect = [&](const RealField (&v)[2], const RealField (&grad)[2][2],
                    int k) {
    RealField out(g);
    out.values() = v[0].values() * grad[k][0].values() +
                   v[1].values() * grad[k][1].values();
    return out;
  };

  SpectralVector fu = {SpectralField(g), SpectralField(g)};
  SpectralVector fb = {SpectralField(g), SpectralField(g)};
  for (int k = 0; k < 2; ++k) {
    fu[k] = from_physical(advect(b, grad_b, k) - advect(u, grad_u, k), 0.0,
                          "momentum equation");
    fb[k] = from_physical(advect(b, grad_u, k) - advect(u, grad_b, k), 0.0,
                          "induction equation");
  }
  PrimitiveState out{leray_project(fu), leray_project(fb)};
  for (int k = 0; k < 2; ++k) {
    if (config.nu != 0.0) {
      out.u[k] -= config.nu *
                  fractional_laplacian(state.u[k], config.effective_alpha());
    }
    if (config.eta != 0.0) {
      out.b[k] -= config.eta * fractional_laplacian(state.b[k], config.beta);
    }
  }
  return out;
}

SpectralVector leray_project(const SpectralVector& v) {
  const TorusGrid& g = v[0].grid();
  require_same_grid(g, v[1].grid(), "leray_project");
  const int n = g.n();
  ComplexArray o1(n, n), o2(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double a = g.k1()(i, j), b = g.k2()(i, j), q = g.ksq()(i, j);
      const std::complex<double> v1 = v[0].coeffs()(i, j);
      const std::complex<double> v2 = v[1].coeffs()(i, j);
      if (q == 0.0) {
        o1(i, j) = v1;
        o2(i, j) = v2;
      } else if (a == -n / 2 || b == -n / 2) {
        o1(i, j) = o2(i, j) = 0.0;
      } else {
        const std::complex<double> dot = (a * v1 + b * v2) / q;
        o1(i, j) = v1 - a * dot;
        o2(i, j) = v2 - b * dot;
      }
    }
  }
  const bool d = v[0].dealiased() && v[1].dealiased();
  return {SpectralField(g, std::move(o1), d), SpectralField(g, std::move(o2), d)};
}

IntegratingFactorRK4::IntegratingFactorRK4(const SolverConfig& config,
                                           const TorusGrid& grid, double dt)
    : config_(config), grid_(grid), dt_(dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error("step size must be > 0");
  const detail::GridData& d = grid.data();
  const RealArray& ksq = d.hksq;
  auto rate = [&](double coeff, double exponent) -> RealArray {
    if (coeff == 0.0) return RealArray::Zero(ksq.rows(), ksq.cols());
    RealArray r = coeff * ksq.pow(exponent);
    r(0, 0) = 0.0;
    return r;
  };
  const RealArray lw = rate(config.nu, config.effective_alpha());
  const RealArray lj = rate(config.eta, config.beta);
  decay_w_full_ = (-lw * dt).exp();
  decay_w_half_ = (-lw * (0.5 * dt)).exp();
  decay_j_full_ = (-lj * dt).exp();
  decay_j_half_ = (-lj * (0.5 * dt)).exp();
  // In terms of w and j: ||Lambda^a u||^2 = sum |xi|^{2a-2} |w_hat|^2.
  const double n2 = double(grid.n()) * grid.n();
  auto weight = [&](double p) -> RealArray {
    RealArray w = ksq.pow(p) * d.hmult * (kTwoPi * kTwoPi / (n2 * n2));
    w(0, 0) = 0.0;
    return w;
  };
  weight_diss_u_ = weight(config.effective_alpha() - 1.0);
  weight_diff_b_ = weight(config.beta - 1.0);
  weight_hbeta_j_ = weight(config.beta);
  weight_l2_ = weight(0.0);
}

DissipationIntegrals IntegratingFactorRK4::rates(const MHDState& s) const {
  return rates_half(detail::to_half(s.w), detail::to_half(s.j));
}

DissipationIntegrals IntegratingFactorRK4::rates_half(
    const ComplexArray& w, const ComplexArray& j) const {
  return {(weight_diss_u_ * w.abs2()).sum(), (weight_diff_b_ * j.abs2()).sum(),
          (weight_hbeta_j_ * j.abs2()).sum()};
}

IntegratingFactorRK4::Result IntegratingFactorRK4::advance(
    const MHDState& s) const {
  require_same_grid(s.grid(), grid_, "IntegratingFactorRK4::advance");
  const double h = dt_;
  const double t = s.t;
  const ComplexArray w0 = detail::to_half(s.w);
  const ComplexArray j0 = detail::to_half(s.j);

  const HalfPair k1 = flux_half(grid_, w0, j0, t);
  const ComplexArray w2 = times(decay_w_half_, w0 + (0.5 * h) * k1.w);
  const ComplexArray j2 = times(decay_j_half_, j0 + (0.5 * h) * k1.j);
  const HalfPair k2 = flux_half(grid_, w2, j2, t + 0.5 * h);
  const ComplexArray w3 = times(decay_w_half_, w0) + (0.5 * h) * k2.w;
  const ComplexArray j3 = times(decay_j_half_, j0) + (0.5 * h) * k2.j;
  const HalfPair k3 = flux_half(grid_, w3, j3, t + 0.5 * h);
  const ComplexArray w4 = times(decay_w_full_, w0) + h * times(decay_w_half_, k3.w);
  const ComplexArray j4 = times(decay_j_full_, j0) + h * times(decay_j_half_, k3.j);
  const HalfPair k4 = flux_half(grid_, w4, j4, t + h);

  const double c = h / 6.0;
  ComplexArray w = times(decay_w_full_, w0 + c * k1.w) +
                   times(decay_w_half_, (2.0 * c) * (k2.w + k3.w)) + c * k4.w;
  ComplexArray j = times(decay_j_full_, j0 + c * k1.j) +
                   times(decay_j_half_, (2.0 * c) * (k2.j + k3.j)) + c * k4.j;
  w(0, 0) = 0.0;
  j(0, 0) = 0.0;

  if (!w.isFinite().all() || !j.isFinite().all()) {
    throw SimulationAbort(t + h, "non-finite state after step");
  }
  const double before = std::sqrt((weight_l2_ * w0.abs2()).sum());
  const double after = std::sqrt((weight_l2_ * w.abs2()).sum());
  if (before > 0.0 && after > 10.0 * before) {
    throw SimulationAbort(t + h, "instability: ||w|| grew from " +
                                     std::to_string(before) + " to " +
                                     std::to_string(after) + " in one step");
  }

  const DissipationIntegrals d1 = rates_half(w0, j0), d2 = rates_half(w2, j2),
                             d3 = rates_half(w3, j3), d4 = rates_half(w4, j4);
  Result r{MHDState(t + h, detail::from_half(grid_, w, true),
                    detail::from_half(grid_, j, true)),
           {}};
  r.increments.diss_u = c * (d1.diss_u + 2.0 * d2.diss_u + 2.0 * d3.diss_u + d4.diss_u);
  r.increments.diff_b = c * (d1.diff_b + 2.0 * d2.diff_b + 2.0 * d3.diff_b + d4.diff_b);
  r.increments.hbeta_j =
      c * (d1.hbeta_j + 2.0 * d2.hbeta_j + 2.0 * d3.hbeta_j + d4.hbeta_j);
  return r;
}

MHDState step(const MHDState& state, const SolverConfig& config) {
  return IntegratingFactorRK4(config, state.grid(), config.dt)
      .advance(state)
      .state;
}

double advective_dt_bound(const MHDState& state) {
  const PrimitiveState p = to_primitive(state);
  double vmax = 0.0;
  for (const SpectralVector* v : {&p.u, &p.b}) {
    const RealArray a = inverse((*v)[0]).values();
    const RealArray b = inverse((*v)[1]).values();
    vmax = std::max(vmax, (a.square() + b.square()).sqrt().maxCoeff());
  }
  if (vmax == 0.0) return std::numeric_limits<double>::infinity();
  return 0.5 * state.grid().spacing() / vmax;
}

double total_energy(const MHDState& state) {
  const RealArray w = norm_weight(state.grid(), -1.0);
  return weighted_sum(w, state.w) + weighted_sum(w, state.j);
}

MHDState make_initial(InitialKind kind, const TorusGrid& grid,
                      std::uint64_t seed, double amplitude, int band) {
  if (band < 1 || band > grid.dealias_cutoff()) {
    throw Error("make_initial: band must lie in [1, n/3]");
  }
  if (!std::isfinite(amplitude)) throw Error("make_initial: amplitude must be finite");
  MHDState s(grid);
  switch (kind) {
    case InitialKind::kOrszagTang:
      // w = curl(-sin x2, sin x1) = cos x1 + cos x2
      // j = curl(-sin x2, sin 2x1) = 2 cos 2x1 + cos x2
      s.w = cosine_mode(grid, 1, 0, amplitude) + cosine_mode(grid, 0, 1, amplitude);
      s.j = cosine_mode(grid, 2, 0, 2.0 * amplitude) +
            cosine_mode(grid, 0, 1, amplitude);
      break;
    case InitialKind::kRandomBand: {
      const RandomSpectrum spec{.band = band, .slope = 2.0};
      s.w = random_field(grid, spec, seed);
      s.j = random_field(grid, spec, seed ^ 0x9E3779B97F4A7C15ULL);
      const double area = kTwoPi * kTwoPi;
      for (SpectralField* f : {&s.w, &s.j}) {
        const double rms = l2_norm(*f) / std::sqrt(area);
        *f *= rms > 0.0 ? amplitude / rms : 0.0;
      }
      break;
    }
  }
  s.w.set_dealiased(true);
  s.j.set_dealiased(true);
  return s;
}

MHDState rescale(const MHDState& state, int lambda, double gamma) {
  return rescale(state, lambda, gamma, state.grid());
}

MHDState rescale(const MHDState& state, int lambda, double gamma,
                 const TorusGrid& target) {
  if (lambda < 1) throw Error("rescale: lambda must be a positive integer");
  if (!std::isfinite(gamma)) throw Error("rescale: gamma must be finite");
  const int band = std::max(state.w.band(), state.j.band());
  if (lambda * band > target.dealias_cutoff()) {
    throw Error("rescale: dilated spectrum exceeds the resolved band");
  }
  const TorusGrid& src = state.grid();
  const double n2 = double(src.n()) * src.n();
  const double m2 = double(target.n()) * target.n();
  const double amp = std::pow(double(lambda), 2.0 * gamma) * (m2 / n2);
  MHDState out(target);
  out.t = state.t / std::pow(double(lambda), 2.0 * gamma);
  for (int i = 0; i < src.n(); ++i) {
    const int k1 = src.wavenumber(i);
    if (std::abs(k1) > band) continue;
    for (int j = 0; j < src.n(); ++j) {
      const int k2 = src.wavenumber(j);
      if (std::abs(k2) > band) continue;
      out.w.at(lambda * k1, lambda * k2) = amp * state.w.coeffs()(i, j);
      out.j.at(lambda * k1, lambda * k2) = amp * state.j.coeffs()(i, j);
    }
  }
  out.w.set_dealiased(true);
  out.j.set_dealiased(true);
  return out;
}

}  // namespace mhd2d
