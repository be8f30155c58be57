#include "mhd2d/checks.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "mhd2d/diagnostics.hpp"
#include "mhd2d/littlewood_paley.hpp"
#include "mhd2d/random_fields.hpp"
#include "mhd2d/run.hpp"

namespace mhd2d {

namespace {

constexpr int kEnsemble = 100;
constexpr int kEnsembleBand = 12;
constexpr double kInf = std::numeric_limits<double>::infinity();
// Second field of a pair: same member index, independent stream.
constexpr std::uint64_t kPartnerSalt = 0x5bd1e995ULL;

std::uint64_t member_seed(std::uint64_t seed, std::uint64_t i) {
  // splitmix64 of (seed, i)
  std::uint64_t z = seed * 0x9e3779b97f4a7c15ULL + (i + 1) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Suite {
 public:
  Suite(std::string name, std::uint64_t seed) : name_(std::move(name)), seed_(seed) {}

  std::uint64_t seed(std::uint64_t i) const { return member_seed(seed_, i); }

  PropertyResult& add(const std::string& name, const std::string& requirement) {
    PropertyResult r;
    r.suite = name_;
    r.name = name;
    r.requirement = requirement;
    out_.push_back(r);
    return out_.back();
  }

  std::vector<PropertyResult> take() { return std::move(out_); }

 private:
  std::string name_;
  std::uint64_t seed_;
  std::vector<PropertyResult> out_;
};

// Runs `body` and turns an exception into a failed property.
void guarded(PropertyResult& r, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    r.passed = false;
    r.requirement += " [error: " + std::string(e.what()) + "]";
  }
}

SpectralField ensemble_field(const TorusGrid& g, std::uint64_t seed) {
  return random_field(g, RandomSpectrum{.band = kEnsembleBand, .slope = 1.0}, seed);
}

double rel_l2(const RealField& a, const RealField& b) {
  const double den = b.values().matrix().norm();
  return (a.values() - b.values()).matrix().norm() / (den > 0.0 ? den : 1.0);
}

bool within_factor(double a, double b, double f) {
  return std::isfinite(a) && std::isfinite(b) && a > 0.0 && b > 0.0 &&
         a <= f * b && b <= f * a;
}

// ---------------------------------------------------------------- lp

void lp_suite(Suite& s) {
  {
    auto& r = s.add("partition_of_unity",
                    "|sum_j Phi_j - 1| < 1e-14 on xi != 0 and |Psi + sum_j Phi_j - 1| < 1e-14, n = 64, 256");
    guarded(r, [&] {
      double hom = 0.0, inhom = 0.0;
      for (int n : {64, 256}) {
        const TorusGrid g(n);
        const DyadicPartition P = build_partition(g);
        RealArray sum = RealArray::Zero(n, n);
        for (int j = P.j_min(); j <= P.j_max(); ++j) sum += P.phi(j);
        RealArray res = (sum - 1.0).abs();
        inhom = std::max(inhom, (P.psi() + sum - 1.0).abs().maxCoeff());
        res(0, 0) = 0.0;
        hom = std::max(hom, res.maxCoeff());
      }
      r.values = {{"max_residual_homogeneous", hom}, {"max_residual_inhomogeneous", inhom}};
      r.passed = hom < 1e-14 && inhom < 1e-14;
    });
  }
  {
    auto& r = s.add("block_supports",
                    "Phi_j > 0 only on 2^(j-1) < |xi| < 2^(j+1); at most two blocks per xi; n = 64, 256");
    guarded(r, [&] {
      long outside = 0, crowded = 0;
      for (int n : {64, 256}) {
        const TorusGrid g(n);
        const DyadicPartition P = build_partition(g);
        Eigen::ArrayXXi count = Eigen::ArrayXXi::Zero(n, n);
        for (int j = P.j_min(); j <= P.j_max(); ++j) {
          const double lo = std::ldexp(1.0, 2 * (j - 1)), hi = std::ldexp(1.0, 2 * (j + 1));
          for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
              if (P.phi(j)(a, b) == 0.0) continue;
              ++count(a, b);
              const double k2 = g.ksq()(a, b);
              if (!(k2 > lo && k2 < hi)) ++outside;
            }
          }
        }
        crowded += (count > 2).count();
      }
      r.values = {{"coefficients_outside_annulus", double(outside)},
                  {"points_in_more_than_two_blocks", double(crowded)}};
      r.passed = outside == 0 && crowded == 0;
    });
  }
  {
    auto& r = s.add("block_disjointness", "Delta_j Delta_k f == 0 exactly for |j - k| >= 2, n = 64");
    guarded(r, [&] {
      const TorusGrid g(64);
      const DyadicPartition P = build_partition(g);
      const SpectralField f = random_field(g, {.band = 21}, s.seed(0));
      double worst = 0.0;
      for (int j = P.j_min(); j <= P.j_max(); ++j) {
        for (int k = j + 2; k <= P.j_max(); ++k) {
          worst = std::max(worst, (P.phi(j) * P.phi(k)).abs().maxCoeff());
          worst = std::max(worst, max_abs(dyadic_block(dyadic_block(f, j, P), k, P)));
        }
      }
      r.values = {{"max_overlap", worst}};
      r.passed = worst == 0.0;
    });
  }
  {
    auto& r = s.add("reconstruction",
                    "sum_j Delta_j f = f (zero mean) and Psi f + sum_{j>=0} Phi_j f = f, relative < 1e-12, 20 fields at n = 64, 256");
    guarded(r, [&] {
      double hom = 0.0, inhom = 0.0;
      for (int n : {64, 256}) {
        const TorusGrid g(n);
        const DyadicPartition P = build_partition(g);
        for (int i = 0; i < 20; ++i) {
          const SpectralField f = random_field(g, {.band = n / 3}, s.seed(100 + i));
          SpectralField sum(g);
          for (int j = P.j_min(); j <= P.j_max(); ++j) sum += dyadic_block(f, j, P);
          hom = std::max(hom, max_rel_diff(sum, f));
          const SpectralField f1 = f + constant_field(g, 0.7);
          SpectralField sum1 = dyadic_block(f1, -1, P, false);
          for (int j = 0; j <= P.j_max(); ++j) sum1 += dyadic_block(f1, j, P, false);
          inhom = std::max(inhom, max_rel_diff(sum1, f1));
        }
      }
      r.values = {{"max_error_homogeneous", hom}, {"max_error_inhomogeneous", inhom}};
      r.passed = hom < 1e-12 && inhom < 1e-12;
    });
  }
  {
    auto& r = s.add("bony_reconstruction",
                    "||T(f,g) + R(f,g) + T(g,f) - fg|| / ||fg|| < 1e-10, 20 band-limited pairs at n = 64, 128");
    guarded(r, [&] {
      double worst = 0.0;
      for (int n : {64, 128}) {
        const TorusGrid g(n);
        const DyadicPartition P = build_partition(g);
        for (int i = 0; i < 10; ++i) {
          const SpectralField f = random_field(g, {.band = n / 4}, s.seed(200 + 2 * i));
          const SpectralField h = random_field(g, {.band = n / 4}, s.seed(201 + 2 * i));
          const BonyParts b = bony_decompose(f, h, P);
          worst = std::max(worst, rel_l2(b.t_fg + b.r_fg + b.t_gf, b.product));
        }
      }
      r.values = {{"max_relative_error", worst}};
      r.passed = worst < 1e-10;
    });
  }
  {
    auto& r = s.add("bernstein",
                    "100 annulus-supported fields, k = 1, 2: L^2 and L^inf ratios in [1/4, 4]; k = 0 ratio 1");
    guarded(r, [&] {
      const TorusGrid g(128);
      double lo = kInf, hi = 0.0, k0 = 0.0;
      bool supported = true;
      for (int i = 0; i < kEnsemble; ++i) {
        const int k = 1 + i % 2, j = 1 + (i / 2) % 4;
        const double r0 = std::ldexp(1.0, j - 1), r1 = std::ldexp(1.0, j + 1);
        const SpectralField f = random_field(
            g, {.band = int(r1), .r_min = r0, .r_max = r1}, s.seed(300 + i));
        const BernsteinRatios b = bernstein_ratio(f, j, k);
        supported = supported && b.in_annulus;
        for (double v : {b.low, b.annulus_l2, b.annulus_linf}) {
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
        if (i < 10) {
          const BernsteinRatios b0 = bernstein_ratio(f, j, 0);
          k0 = std::max({k0, std::abs(b0.annulus_l2 - 1.0), std::abs(b0.annulus_linf - 1.0)});
        }
      }
      r.values = {{"min_ratio", lo}, {"max_ratio", hi}, {"k0_max_deviation", k0}};
      r.passed = supported && lo >= 0.25 && hi <= 4.0 && k0 < 1e-12;
    });
  }
  {
    auto& r = s.add("besov_sobolev_equivalence",
                    "100 fields at n = 128: B^0_{2,2} / L^2 in [2^-1/2, 1]; B^1.5_{2,2} / H^1.5 in [2^-1.5 / sqrt 2, 2^1.5]");
    guarded(r, [&] {
      const TorusGrid g(128);
      const DyadicPartition P = build_partition(g);
      double lo0 = kInf, hi0 = 0.0, lo1 = kInf, hi1 = 0.0;
      for (int i = 0; i < kEnsemble; ++i) {
        const SpectralField f = random_field(g, {.band = 40}, s.seed(400 + i));
        const double c0 = besov_norm(f, {.s = 0.0}, P) / l2_norm(f);
        const double c1 = besov_norm(f, {.s = 1.5}, P) / sobolev_norm(f, 1.5);
        lo0 = std::min(lo0, c0);
        hi0 = std::max(hi0, c0);
        lo1 = std::min(lo1, c1);
        hi1 = std::max(hi1, c1);
      }
      r.values = {{"b0_over_l2_min", lo0}, {"b0_over_l2_max", hi0},
                  {"b15_over_h15_min", lo1}, {"b15_over_h15_max", hi1}};
      r.passed = lo0 >= std::sqrt(0.5) - 1e-12 && hi0 <= 1.0 + 1e-12 &&
                 lo1 >= std::pow(2.0, -1.5) * std::sqrt(0.5) && hi1 <= std::pow(2.0, 1.5);
    });
  }
}

// -------------------------------------------------------- inequalities

struct Extremes {
  double min = kInf;
  double max = 0.0;
  bool finite = true;

  void add(double v) {
    finite = finite && std::isfinite(v);
    min = std::min(min, v);
    max = std::max(max, v);
  }
};

// Runs `ratio` over the ensemble at n = 128 and n = 256 and records the
// maxima, their quotient and whether every value was finite.
void resolution_ensemble(PropertyResult& r, const Suite& s, std::uint64_t offset,
                         const std::string& label,
                         const std::function<double(const TorusGrid&, std::uint64_t)>& ratio,
                         bool& ok) {
  Extremes e128, e256;
  for (int i = 0; i < kEnsemble; ++i) {
    e128.add(ratio(TorusGrid(128), s.seed(offset + i)));
    e256.add(ratio(TorusGrid(256), s.seed(offset + i)));
  }
  r.values.push_back({label + "max_n128", e128.max});
  r.values.push_back({label + "max_n256", e256.max});
  r.values.push_back({label + "stability", e256.max / e128.max});
  ok = ok && e128.finite && e256.finite && within_factor(e128.max, e256.max, 2.0);
}

bool scale_invariant(double a, double b) { return std::abs(a - b) <= 1e-12 * std::abs(a); }

void inequalities_suite(Suite& s) {
  {
    auto& r = s.add("positivity",
                    "2 int |Lambda^a f^(p/2)|^2 <= p int f^(p-1) Lambda^2a f within 1e-10 for f = g^2, p = 4, a = 0.5, 100 fields at n = 128, 256; "
                    "p = 2 equality within 1e-12");
    guarded(r, [&] {
      double worst = -kInf, eq = 0.0, min_margin = kInf;
      for (int n : {128, 256}) {
        const TorusGrid g(n);
        for (int i = 0; i < kEnsemble; ++i) {
          const SpectralField h = random_field(g, {.band = kEnsembleBand / 2, .slope = 1.0}, s.seed(1000 + i));
          const SpectralField f = dealiased_product(h, h);
          const PositivityCheck c = positivity_check(f, 4, 0.5);
          worst = std::max(worst, (c.lhs - c.rhs) / c.rhs);
          min_margin = std::min(min_margin, c.rhs / c.lhs);
          if (i < 20) {
            const PositivityCheck c2 = positivity_check(h, 2, 0.5);
            eq = std::max(eq, std::abs(c2.lhs - c2.rhs) / c2.rhs);
          }
        }
      }
      r.values = {{"max_relative_excess", worst}, {"min_rhs_over_lhs", min_margin},
                  {"p2_equality_error", eq}};
      r.passed = worst <= 1e-10 && eq < 1e-12;
    });
  }
  {
    auto& r = s.add("calderon_zygmund",
                    "||grad u||_p / ||w||_p: = 1 within 1e-12 at p = 2; finite at p = 4, 8; scale invariant; maxima stable within 2x from n = 128 to 256");
    guarded(r, [&] {
      bool ok = true;
      double p2 = 0.0, scale = 0.0;
      for (int i = 0; i < kEnsemble; ++i) {
        const SpectralField w = ensemble_field(TorusGrid(128), s.seed(2000 + i));
        p2 = std::max(p2, std::abs(cz_ratio(w, 2.0) - 1.0));
        if (i < 10) {
          const double a = cz_ratio(w, 4.0), b = cz_ratio(10.0 * w, 4.0);
          scale = std::max(scale, std::abs(a - b) / a);
        }
      }
      r.values = {{"p2_max_deviation", p2}, {"scale_deviation", scale}};
      for (double p : {4.0, 8.0}) {
        resolution_ensemble(r, s, 2000, "p" + std::to_string(int(p)) + "_",
                            [p](const TorusGrid& g, std::uint64_t sd) {
                              return cz_ratio(ensemble_field(g, sd), p);
                            },
                            ok);
      }
      r.passed = ok && p2 < 1e-12 && scale <= 1e-12;
    });
  }
  {
    auto& r = s.add("gagliardo_nirenberg",
                    "||f||_inf / (||f||^(1-1/b) ||Lambda^b f||^(1/b)), b = 1.6: finite, scale invariant, maxima stable within 2x");
    guarded(r, [&] {
      bool ok = true;
      double scale = 0.0;
      for (int i = 0; i < 10; ++i) {
        const SpectralField f = ensemble_field(TorusGrid(128), s.seed(3000 + i));
        const double a = gn_ratio(f, 1.6);
        if (!scale_invariant(a, gn_ratio(10.0 * f, 1.6))) ok = false;
        scale = std::max(scale, std::abs(a - gn_ratio(1e-3 * f, 1.6)) / a);
      }
      r.values = {{"scale_deviation", scale}};
      resolution_ensemble(r, s, 3000, "",
                          [](const TorusGrid& g, std::uint64_t sd) {
                            return gn_ratio(ensemble_field(g, sd), 1.6);
                          },
                          ok);
      r.passed = ok && scale <= 1e-12;
    });
  }
  {
    auto& r = s.add("commutator",
                    "||Lambda^s(fg) - f Lambda^s g||_2 / (||grad f||_inf ||Lambda^(s-1) g||_2 + ||Lambda^s f||_2 ||g||_inf), "
                    "s = 1, 1.5, 2: finite, invariant under scaling f and g, maxima stable within 2x");
    guarded(r, [&] {
      bool ok = true;
      double scale = 0.0;
      for (double sv : {1.0, 1.5, 2.0}) {
        const std::uint64_t base = 4000 + std::uint64_t(sv * 1000);
        auto ratio = [sv](const TorusGrid& g, std::uint64_t sd, double af, double ag) {
          return commutator_ratio(af * ensemble_field(g, sd),
                                  ag * ensemble_field(g, sd ^ kPartnerSalt), sv);
        };
        for (int i = 0; i < 5; ++i) {
          const TorusGrid g(128);
          const double a = ratio(g, s.seed(base + i), 1.0, 1.0);
          scale = std::max(scale, std::abs(a - ratio(g, s.seed(base + i), 10.0, 0.1)) / a);
        }
        char label[16];
        std::snprintf(label, sizeof label, "s%.1f_", sv);
        resolution_ensemble(
            r, s, base, label,
            [&ratio](const TorusGrid& g, std::uint64_t sd) { return ratio(g, sd, 1.0, 1.0); }, ok);
      }
      r.values.insert(r.values.begin(), {"scale_deviation", scale});
      r.passed = ok && scale <= 1e-12;
    });
  }
  {
    auto& r = s.add("product_estimate",
                    "||fg||_{H^(s1+s2-1)} / (||f||_{H^s1} ||g||_{H^s2}), s1 = s2 = 1/2: finite, invariant under scaling, maxima stable within 2x");
    guarded(r, [&] {
      bool ok = true;
      double scale = 0.0;
      for (int i = 0; i < 10; ++i) {
        const TorusGrid g(128);
        const SpectralField f = ensemble_field(g, s.seed(5000 + i));
        const SpectralField h = ensemble_field(g, s.seed(5000 + i) ^ kPartnerSalt);
        const double a = product_estimate_ratio(f, h, 0.5, 0.5);
        scale = std::max(scale, std::abs(a - product_estimate_ratio(10.0 * f, 10.0 * h, 0.5, 0.5)) / a);
      }
      r.values = {{"scale_deviation", scale}};
      resolution_ensemble(r, s, 5000, "",
                          [](const TorusGrid& g, std::uint64_t sd) {
                            return product_estimate_ratio(ensemble_field(g, sd),
                                                          ensemble_field(g, sd ^ kPartnerSalt), 0.5, 0.5);
                          },
                          ok);
      r.passed = ok && scale <= 1e-12;
    });
  }
  {
    auto& r = s.add("log_inequality",
                    "||grad u||_inf / (||u||_2 + ||w||_inf log2(2 + ||u||_{H^3}) + 1): finite, bounded as w -> 1e6 w, "
                    "low + middle + high >= ||grad u||_inf, maxima stable within 2x");
    guarded(r, [&] {
      bool ok = true;
      double amp = 0.0, split = 0.0;
      const TorusGrid g(128);
      const DyadicPartition P = build_partition(g);
      for (int i = 0; i < 10; ++i) {
        const SpectralField w = ensemble_field(g, s.seed(6000 + i));
        const LogInequality a = log_inequality(w, 3.0, P);
        const double big = log_inequality(1e6 * w, 3.0, P).ratio;
        amp = std::max(amp, big / a.ratio);
        split = std::max(split, a.grad_linf / (a.low + a.middle + a.high));
      }
      r.values = {{"amplified_over_unit_max", amp}, {"grad_over_split_max", split}};
      resolution_ensemble(r, s, 6000, "",
                          [](const TorusGrid& gg, std::uint64_t sd) {
                            return log_inequality_ratio(ensemble_field(gg, sd), 3.0);
                          },
                          ok);
      r.passed = ok && std::isfinite(amp) && amp <= 2.0 && split <= 1.0 + 1e-12;
    });
  }
}

// ------------------------------------------------------------ dynamics

SpectralField random_physical(const TorusGrid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  RealField f(g);
  for (Eigen::Index i = 0; i < f.values().size(); ++i) f.values().data()[i] = normal(rng);
  return forward(f);
}

SolverConfig dyn_config(int n, double alpha, double beta, double nu, double eta,
                        double dt, double t_end) {
  SolverConfig c;
  c.n = n;
  c.alpha = alpha;
  c.beta = beta;
  c.nu = nu;
  c.eta = eta;
  c.dt = dt;
  c.t_end = t_end;
  c.output_every = 10;
  c.band = std::min(8, n / 3);
  return c;
}

void dynamics_suite(Suite& s) {
  {
    auto& r = s.add("spectral_identities",
                    "round trip, Parseval, Biot-Savart round trip and Leray idempotence, relative < 1e-12 at n = 64, 256");
    guarded(r, [&] {
      double trip = 0.0, parseval = 0.0, bs = 0.0, leray = 0.0;
      for (int n : {64, 256}) {
        const TorusGrid g(n);
        for (int i = 0; i < 3; ++i) {
          const RealField f = inverse(random_physical(g, s.seed(7000 + i)));
          const RealField back = inverse(forward(f));
          trip = std::max(trip, (back.values() - f.values()).abs().maxCoeff() / f.values().abs().maxCoeff());
          const double phys = 4.0 * M_PI * M_PI * f.values().square().mean();
          parseval = std::max(parseval, std::abs(l2_norm_sq(forward(f)) - phys) / phys);
          const SpectralField w = random_field(g, {.band = n / 2 - 1}, s.seed(7100 + i));
          bs = std::max(bs, max_rel_diff(curl(biot_savart(w)), w));
          const SpectralVector v{random_physical(g, s.seed(7200 + i)), random_physical(g, s.seed(7300 + i))};
          const SpectralVector pv = leray_project(v), ppv = leray_project(pv);
          leray = std::max({leray, max_rel_diff(ppv[0], pv[0]), max_rel_diff(ppv[1], pv[1])});
        }
      }
      r.values = {{"round_trip", trip}, {"parseval", parseval}, {"biot_savart", bs},
                  {"leray_idempotence", leray}};
      r.passed = trip < 1e-12 && parseval < 1e-12 && bs < 1e-12 && leray < 1e-12;
    });
  }
  {
    auto& r = s.add("form_equivalence",
                    "curl(primitive_rhs) = vorticity_rhs + linear part, bracket and flux forms, 50 random states at n = 128, max relative error < 1e-10");
    guarded(r, [&] {
      const TorusGrid g(128);
      const SolverConfig c = dyn_config(128, 0.5, 1.0, 0.1, 0.1, 1e-3, 0.0);
      double bracket = 0.0, flux = 0.0;
      for (int i = 0; i < 50; ++i) {
        const MHDState st = make_initial(InitialKind::kRandomBand, g, s.seed(8000 + i), 1.0, 32);
        const PrimitiveState dp = primitive_rhs(to_primitive(st), c);
        const SpectralField cw = curl(dp.u), cj = curl(dp.b);
        const CurlRhs lin = linear_rhs(st, c);
        const CurlRhs a = vorticity_rhs(st, RhsForm::kBracket);
        const CurlRhs b = vorticity_rhs(st, RhsForm::kFlux);
        bracket = std::max({bracket, max_rel_diff(cw, a.dw + lin.dw), max_rel_diff(cj, a.dj + lin.dj)});
        flux = std::max({flux, max_rel_diff(cw, b.dw + lin.dw), max_rel_diff(cj, b.dj + lin.dj)});
      }
      r.values = {{"bracket_form_max_error", bracket}, {"flux_form_max_error", flux}};
      r.passed = bracket < 1e-10 && flux < 1e-10;
    });
  }
  {
    auto& r = s.add("divergence_free",
                    "Leray output and primitive_rhs output divergence-free to 1e-13 relative, 10 states at n = 64");
    guarded(r, [&] {
      const TorusGrid g(64);
      const SolverConfig c = dyn_config(64, 0.5, 1.0, 0.1, 0.1, 1e-3, 0.0);
      double worst = 0.0;
      for (int i = 0; i < 10; ++i) {
        const SpectralVector v{random_physical(g, s.seed(9000 + i)), random_physical(g, s.seed(9100 + i))};
        const SpectralVector pv = leray_project(v);
        const double scale = std::max(max_abs(v[0]), max_abs(v[1])) * g.n();
        worst = std::max(worst, max_abs(divergence(pv)) / scale);
        const PrimitiveState dp =
            primitive_rhs(to_primitive(make_initial(InitialKind::kRandomBand, g, s.seed(9200 + i), 1.0, 16)), c);
        for (const SpectralVector* q : {&dp.u, &dp.b}) {
          const double sc = std::max(max_abs((*q)[0]), max_abs((*q)[1])) * g.n();
          worst = std::max(worst, max_abs(divergence(*q)) / sc);
        }
      }
      r.values = {{"max_relative_divergence", worst}};
      r.passed = worst < 1e-13;
    });
  }
  {
    auto& r = s.add("exact_diffusion",
                    "u = 0, single current mode |xi| = 2, eta = 1, beta = 1, dt = 1e-3: j(t) = exp(-4t) j(0) within 1e-10; budget residual < 1e-10");
    guarded(r, [&] {
      const TorusGrid g(32);
      const SolverConfig c = dyn_config(32, 0.0, 1.0, 0.0, 1.0, 1e-3, 0.5);
      const MHDState init(0.0, SpectralField(g), cosine_mode(g, 2, 0, 1.0));
      const RunResult res = run(c, init);
      double worst = 0.0;
      const SpectralField expect = std::exp(-4.0 * res.final_state.t) * init.j;
      worst = max_rel_diff(res.final_state.j, expect);
      const double budget = energy_budget_residual(res.records, c);
      r.values = {{"decay_error", worst}, {"budget_residual", budget}};
      r.passed = !res.aborted && worst < 1e-10 && budget < 1e-10;
    });
  }
  {
    auto& r = s.add("ideal_conservation",
                    "nu = eta = 0, Orszag-Tang data, n = 64, t in [0, 1]: relative energy drift < 1e-8");
    guarded(r, [&] {
      const SolverConfig c = dyn_config(64, 0.0, 0.0, 0.0, 0.0, 2e-3, 1.0);
      const RunResult res = run(c, make_initial(InitialKind::kOrszagTang, TorusGrid(64), 0, 1.0, 8));
      const double drift = energy_budget_residual(res.records, c);
      r.values = {{"energy_drift", drift}};
      r.passed = !res.aborted && drift < 1e-8;
    });
  }
  {
    auto& r = s.add("energy_budget",
                    "dissipative runs at n = 64, t in [0, 1] (alpha = 0.5, beta = 1 and alpha = 0, beta = 1.6, nu = 0): budget residual < 1e-6; means stay zero");
    guarded(r, [&] {
      const TorusGrid g(64);
      const SolverConfig c1 = dyn_config(64, 0.5, 1.0, 0.05, 0.05, 1e-3, 1.0);
      const SolverConfig c2 = dyn_config(64, 0.0, 1.6, 0.0, 1.0, 1e-3, 1.0);
      const RunResult r1 = run(c1, make_initial(InitialKind::kRandomBand, g, s.seed(10000), 1.0, 8));
      const RunResult r2 = run(c2, make_initial(InitialKind::kOrszagTang, g, 0, 1.0, 8));
      const double b1 = energy_budget_residual(r1.records, c1);
      const double b2 = energy_budget_residual(r2.records, c2);
      bool means = true;
      for (const RunResult* rr : {&r1, &r2}) {
        means = means && rr->final_state.w.mean_coefficient() == 0.0 &&
                rr->final_state.j.mean_coefficient() == 0.0;
      }
      r.values = {{"residual_dissipative", b1}, {"residual_resistive", b2}};
      r.passed = !r1.aborted && !r2.aborted && b1 < 1e-6 && b2 < 1e-6 && means;
    });
  }
  {
    auto& r = s.add("fourth_order",
                    "Richardson self-convergence ratio 16 +- 20% for dt = 0.01, 0.005, 0.0025 at n = 64, t in [0, 0.5]");
    guarded(r, [&] {
      const TorusGrid g(64);
      const MHDState init = make_initial(InitialKind::kRandomBand, g, s.seed(11000), 1.0, 8);
      std::vector<MHDState> finals;
      for (double dt : {0.01, 0.005, 0.0025}) {
        finals.push_back(run(dyn_config(64, 0.5, 1.0, 0.05, 0.05, dt, 0.5), init).final_state);
      }
      auto dist = [](const MHDState& a, const MHDState& b) {
        return std::sqrt(l2_norm_sq(a.w - b.w) + l2_norm_sq(a.j - b.j));
      };
      const double ratio = dist(finals[0], finals[1]) / dist(finals[1], finals[2]);
      r.values = {{"ratio", ratio}};
      r.passed = ratio > 12.8 && ratio < 19.2;
    });
  }
  {
    auto& r = s.add("scaling_covariance",
                    "lambda = 2, alpha = beta = gamma = 1: evolve-then-rescale vs rescale-then-evolve agree to 1e-6 relative, n = 64");
    guarded(r, [&] {
      const TorusGrid coarse(32), fine(64);
      const MHDState init = make_initial(InitialKind::kRandomBand, coarse, s.seed(12000), 1.0, 6);
      const RunResult a = run(dyn_config(32, 1.0, 1.0, 0.05, 0.05, 4e-3, 0.4), init);
      const MHDState lhs = rescale(a.final_state, 2, 1.0, fine);
      const RunResult b = run(dyn_config(64, 1.0, 1.0, 0.05, 0.05, 1e-3, 0.1),
                              rescale(init, 2, 1.0, fine));
      const double err = std::max(max_rel_diff(lhs.w, b.final_state.w), max_rel_diff(lhs.j, b.final_state.j));
      r.values = {{"max_relative_difference", err}, {"time_difference", std::abs(lhs.t - b.final_state.t)}};
      r.passed = !a.aborted && !b.aborted && err < 1e-6 && std::abs(lhs.t - b.final_state.t) < 1e-12;
    });
  }
}

}  // namespace

bool CheckReport::passed() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const PropertyResult& p) { return p.passed; });
}

std::vector<std::string> check_suite_names() { return {"lp", "inequalities", "dynamics"}; }

CheckReport run_checks(const std::string& suite, std::uint64_t seed) {
  std::vector<std::string> names;
  if (suite == "all") {
    names = check_suite_names();
  } else {
    const auto known = check_suite_names();
    if (std::find(known.begin(), known.end(), suite) == known.end()) {
      throw Error("unknown check suite '" + suite + "' (expected all, lp, inequalities or dynamics)");
    }
    names = {suite};
  }
  CheckReport report{suite, seed, {}};
  for (const std::string& name : names) {
    Suite s(name, seed);
    if (name == "lp") lp_suite(s);
    if (name == "inequalities") inequalities_suite(s);
    if (name == "dynamics") dynamics_suite(s);
    for (auto& p : s.take()) report.properties.push_back(std::move(p));
  }
  return report;
}

}  // namespace mhd2d
