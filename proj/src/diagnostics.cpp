#include "mhd2d/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace mhd2d {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// sum_{xi != 0} |xi|^{2p} |F(xi)|^2 in L^2(T^2) units.
double weighted_sq(const SpectralField& F, double p) {
  const TorusGrid& g = F.grid();
  RealArray w = g.ksq().pow(p);
  w(0, 0) = 0.0;
  const double n2 = double(g.n()) * g.n();
  return kTwoPi * kTwoPi * (w * F.coeffs().abs2()).sum() / (n2 * n2);
}

std::vector<SpectralField> gradient_entries(const SpectralVector& u) {
  return {partial_derivative(u[0], 1), partial_derivative(u[0], 2),
          partial_derivative(u[1], 1), partial_derivative(u[1], 2)};
}

bool zero_mean(const SpectralField& f) {
  return f.mean_coefficient() == std::complex<double>(0.0, 0.0);
}

SpectralField power(const SpectralField& f, int k) {
  SpectralField out = f;
  for (int i = 1; i < k; ++i) out = exact_product(out, resample(f, out.grid().n()));
  return out;
}

bool allowed_exponent(double p) { return p == 2.0 || p == 4.0 || std::isinf(p); }

}  // namespace

DiagnosticsRecord compute_record(const MHDState& state,
                                 const SolverConfig& config,
                                 const DissipationIntegrals& integrals) {
  const double a = config.effective_alpha(), b = config.beta;
  DiagnosticsRecord r;
  r.t = state.t;
  r.energy_u = weighted_sq(state.w, -1.0);
  r.energy_b = weighted_sq(state.j, -1.0);
  r.X = l2_norm_sq(state.w) + l2_norm_sq(state.j);
  r.diss_u = weighted_sq(state.w, a - 1.0);
  r.diff_b = weighted_sq(state.j, b - 1.0);
  r.hbeta_b = r.diff_b;
  r.h2beta_b = weighted_sq(state.j, 2.0 * b - 1.0);
  const std::vector<double> lp = lp_norms(state.w, {2.0, 4.0, 8.0, INFINITY});
  std::copy(lp.begin(), lp.end(), r.lp_w.begin());
  r.linf_w = r.lp_w[3];
  r.linf_grad_u = lp_norm_pointwise(gradient_entries(biot_savart(state.w)), INFINITY);
  r.int_diss_u = integrals.diss_u;
  r.int_diff_b = integrals.diff_b;
  r.int_hbeta_j = integrals.hbeta_j;
  r.lgamma_b = std::sqrt(weighted_sq(state.j, b + 0.5 * a - 1.0));

  const double all[] = {r.energy_u, r.energy_b, r.X, r.diss_u, r.diff_b,
                        r.h2beta_b, r.lp_w[0], r.lp_w[1], r.lp_w[2], r.lp_w[3],
                        r.linf_grad_u, r.int_diss_u, r.int_diff_b,
                        r.int_hbeta_j, r.lgamma_b};
  for (double v : all) {
    if (!std::isfinite(v)) throw SimulationAbort(state.t, "non-finite diagnostic");
  }
  return r;
}

double energy_budget_residual(const std::vector<DiagnosticsRecord>& series,
                              const SolverConfig& config) {
  if (series.size() < 2) throw Error("energy_budget_residual: need at least two records");
  const double e0 = series.front().energy();
  double worst = 0.0;
  for (const auto& r : series) {
    const double balance = r.energy() + 2.0 * config.nu * r.int_diss_u +
                           2.0 * config.eta * r.int_diff_b - e0;
    worst = std::max(worst, std::abs(balance));
  }
  return e0 > 0.0 ? worst / e0 : worst;
}

double gn_ratio(const SpectralField& f, double beta) {
  if (!(beta > 1.0)) throw Error("gn_ratio: beta must exceed 1");
  if (!zero_mean(f)) throw Error("gn_ratio: f must have zero mean");
  const double l2 = l2_norm(f);
  if (l2 == 0.0) throw Error("gn_ratio: zero input");
  const double lb = std::sqrt(weighted_sq(f, beta));
  return lp_norm(f, INFINITY) /
         (std::pow(l2, (beta - 1.0) / beta) * std::pow(lb, 1.0 / beta));
}

void CommutatorExponents::validate() const {
  for (double e : {p, p1, p2, p3, p4}) {
    if (!allowed_exponent(e)) throw Error("commutator exponents must be 2, 4 or inf");
  }
  if (std::isinf(p) || std::isinf(p2) || std::isinf(p3)) {
    throw Error("commutator exponents p, p2, p3 must be finite");
  }
  if (1.0 / p != 1.0 / p1 + 1.0 / p2 || 1.0 / p != 1.0 / p3 + 1.0 / p4) {
    throw Error("commutator exponents violate 1/p = 1/p1 + 1/p2 = 1/p3 + 1/p4");
  }
}

double commutator_ratio(const SpectralField& f, const SpectralField& g,
                        double s, const CommutatorExponents& exps) {
  exps.validate();
  if (!(s > 0.0)) throw Error("commutator_ratio: s must be > 0");
  require_same_grid(f.grid(), g.grid(), "commutator_ratio");
  SpectralField fg = exact_product(f, g);
  SpectralField f_lsg = exact_product(f, lambda_power(g, s));
  const int m = std::max(fg.grid().n(), f_lsg.grid().n());
  const SpectralField diff = lambda_power(resample(fg, m), s) - resample(f_lsg, m);
  const double lhs = lp_norm(diff, exps.p);

  const double rhs =
      lp_norm_pointwise({partial_derivative(f, 1), partial_derivative(f, 2)}, exps.p1) *
          lp_norm(lambda_power(g, s - 1.0), exps.p2) +
      lp_norm(lambda_power(f, s), exps.p3) * lp_norm(g, exps.p4);
  if (rhs == 0.0) {
    // Only round-off survives on the left, e.g. for constant f.
    const double scale = lp_norm(lambda_power(resample(fg, m), s), exps.p);
    return lhs <= 1e-12 * scale ? 0.0 : INFINITY;
  }
  return lhs / rhs;
}

PositivityCheck positivity_check(const SpectralField& f, int p, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error("positivity_check: alpha must lie in [0, 1]");
  if (p < 2 || p % 2 != 0) throw Error("positivity_check: p must be even and >= 2");
  if (p > 2) {
    const RealArray v = oversampled(f).values();
    if (v.minCoeff() < -1e-12 * v.abs().maxCoeff()) {
      throw Error("positivity_check: f must be nonnegative for p > 2");
    }
  }
  PositivityCheck out;
  out.lhs = 2.0 * l2_norm_sq(lambda_power(power(f, p / 2), alpha));
  const SpectralField head = power(f, p - 1);
  out.rhs = double(p) *
            l2_inner(head, resample(lambda_power(f, 2.0 * alpha), head.grid().n()));
  return out;
}

double cz_ratio(const SpectralField& w, double p) {
  if (!(p > 1.0) || std::isinf(p)) throw Error("cz_ratio: p must be finite and > 1");
  const double wp = lp_norm(w, p);
  if (wp == 0.0) throw Error("cz_ratio: zero input");
  return lp_norm_pointwise(gradient_entries(biot_savart(w)), p) / wp;
}

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::kTheorem11:
      return "theorem-1.1";
    case Regime::kTheorem12:
      return "theorem-1.2";
    case Regime::kTheorem51:
      return "theorem-5.1";
    case Regime::kOutside:
      return "outside";
  }
  return "outside";
}

Regime classify_regime(double alpha, double beta, double nu, double eta) {
  if (nu == 0.0 && eta > 0.0 && alpha == 0.0 && beta > 1.5) return Regime::kTheorem11;
  if (nu > 0.0 && eta > 0.0) {
    if (alpha > 0.0 && alpha < 0.5 && beta > 1.25 && beta <= 1.5 &&
        alpha + 2.0 * beta > 3.0) {
      return Regime::kTheorem12;
    }
    if (alpha >= 0.5 && beta >= 1.0) return Regime::kTheorem51;
  }
  return Regime::kOutside;
}

Regime classify_regime(const SolverConfig& config) {
  return classify_regime(config.alpha, config.beta, config.nu, config.eta);
}

RegimeReport regime_report(const std::vector<DiagnosticsRecord>& series,
                           const SolverConfig& config) {
  RegimeReport rep;
  rep.regime = classify_regime(config);
  rep.baseline = config.beta == 0.0 || config.eta == 0.0;

  auto summarize = [&](const std::string& name, auto get) {
    QuantitySummary q;
    q.name = name;
    if (!series.empty()) {
      q.initial = get(series.front());
      q.final = get(series.back());
      q.sup = q.initial;
      q.t_at_sup = series.front().t;
      for (const auto& r : series) {
        if (get(r) > q.sup) {
          q.sup = get(r);
          q.t_at_sup = r.t;
        }
      }
      q.growing = series.size() > 1 && q.final == q.sup && q.final > 1.01 * q.initial;
    }
    rep.quantities.push_back(q);
  };
  summarize("X", [](const DiagnosticsRecord& r) { return r.X; });
  summarize("energy", [](const DiagnosticsRecord& r) { return r.energy(); });
  summarize("hbeta_b", [](const DiagnosticsRecord& r) { return r.hbeta_b; });
  summarize("linf_w", [](const DiagnosticsRecord& r) { return r.linf_w; });
  summarize("linf_grad_u", [](const DiagnosticsRecord& r) { return r.linf_grad_u; });

  if (rep.regime == Regime::kTheorem12) {
    rep.has_gamma = true;
    rep.gamma = config.beta + 0.5 * config.effective_alpha();
    for (const auto& r : series) rep.sup_lgamma_b = std::max(rep.sup_lgamma_b, r.lgamma_b);
    rep.gamma_plus_beta_gt_3 = rep.gamma + config.beta > 3.0;
  }
  return rep;
}

}  // namespace mhd2d
