#include <cmath>

#include "doctest.h"
#include "mhd2d/littlewood_paley.hpp"
#include "mhd2d/random_fields.hpp"

using namespace mhd2d;

namespace {

double rel_l2(const RealArray& a, const RealArray& b) {
  return std::sqrt((a - b).square().sum() / b.square().sum());
}

SpectralField sine_mode(const TorusGrid& g, int k1, int k2, double amp = 1.0) {
  return cosine_mode(g, k1, k2, amp, -M_PI / 2);
}

}  // namespace

TEST_CASE("bump profile") {
  CHECK(bump_profile(0.5) == 0.0);
  CHECK(bump_profile(2.0) == 0.0);
  CHECK(bump_profile(0.3) == 0.0);
  CHECK(bump_profile(1.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(bump_profile(0.51) > 0.0);
  // Symmetric in log2 r.
  CHECK(bump_profile(1.5) == doctest::Approx(bump_profile(1.0 / 1.5)));
}

TEST_CASE("partition invariants") {
  for (int n : {16, 64, 256}) {
    const TorusGrid g(n);
    const DyadicPartition P = build_partition(g);
    CHECK(P.j_min() == 0);
    CHECK(P.j_max() == int(std::log2(n)) - 1);
    double worst = 0.0, worst_inh = 0.0;
    bool supports_ok = true, at_most_two = true, disjoint = true;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        const double q = g.ksq()(a, b);
        double sum = 0.0;
        int nonzero = 0;
        for (int j = P.j_min(); j <= P.j_max(); ++j) {
          const double v = P.phi(j)(a, b);
          CHECK(v >= 0.0);
          sum += v;
          if (v != 0.0) {
            ++nonzero;
            if (!(q > std::pow(4.0, j - 1) && q < std::pow(4.0, j + 1))) supports_ok = false;
          }
          for (int k = j + 2; k <= P.j_max(); ++k) {
            if (v * P.phi(k)(a, b) != 0.0) disjoint = false;
          }
        }
        if (nonzero > 2) at_most_two = false;
        if (q != 0.0) worst = std::max(worst, std::abs(sum - 1.0));
        worst_inh = std::max(worst_inh, std::abs(P.psi()(a, b) + sum - 1.0));
      }
    }
    CHECK(worst < 1e-14);
    CHECK(worst_inh < 1e-14);
    CHECK(supports_ok);
    CHECK(at_most_two);
    CHECK(disjoint);
    CHECK(P.psi()(0, 0) == 1.0);
    // Exactly on a dyadic radius only one block is active.
    for (int j = 1; j <= P.j_max(); ++j) {
      const int k = 1 << j;
      if (k >= n / 2) break;
      const int a = g.index(k);
      CHECK(P.phi(j - 1)(a, 0) + P.phi(j)(a, 0) == 1.0);
    }
  }
}

TEST_CASE("dyadic blocks: single modes, reconstruction and disjointness") {
  const TorusGrid g(64);
  const DyadicPartition P(g);
  const auto f = sine_mode(g, 8, 0);
  CHECK(max_abs_diff(dyadic_block(f, 2, P) + dyadic_block(f, 3, P), f) == 0.0);
  CHECK(max_abs(dyadic_block(f, -2, P, false)) == 0.0);
  CHECK(max_abs(dyadic_block(f, -5, P, false)) == 0.0);

  const auto r = random_field(g, {.band = 31}, 17);
  SpectralField sum(g);
  for (int j = P.j_min(); j <= P.j_max(); ++j) sum += dyadic_block(r, j, P);
  CHECK(max_abs_diff(sum, r) / max_abs(r) < 1e-12);

  const auto with_mean = r + constant_field(g, 3.0);
  SpectralField inh = dyadic_block(with_mean, -1, P, false);
  CHECK(std::abs(inh.mean_coefficient() - with_mean.mean_coefficient()) < 1e-9);
  for (int j = 0; j <= P.j_max(); ++j) inh += dyadic_block(with_mean, j, P, false);
  CHECK(max_abs_diff(inh, with_mean) / max_abs(with_mean) < 1e-12);

  for (int j = 0; j <= P.j_max(); ++j) {
    for (int k = j + 2; k <= P.j_max(); ++k) {
      CHECK(max_abs(dyadic_block(dyadic_block(r, j, P), k, P)) == 0.0);
    }
  }
}

TEST_CASE("Besov norms") {
  const TorusGrid g(64);
  const DyadicPartition P(g);
  CHECK(besov_norm(SpectralField(g), {.s = 1.0}, P) == 0.0);
  CHECK_THROWS_AS(besov_norm(constant_field(g, 1.0), {}, P), Error);
  CHECK_THROWS_AS(besov_norm(SpectralField(g), {.p = 0.5}, P), Error);

  for (int j = 1; j <= 4; ++j) {
    const auto f = sine_mode(g, 1 << j, 0);
    for (double s : {-1.0, 0.0, 0.5, 2.0}) {
      const double b = besov_norm(f, {.s = s}, P);
      const double ref = std::pow(2.0, j * s) * l2_norm(f);
      CHECK(b >= std::pow(2.0, -std::abs(s)) * ref * (1 - 1e-12));
      CHECK(b <= std::pow(2.0, std::abs(s)) * ref * (1 + 1e-12));
    }
  }

  // sum_j Phi_j^2 lies in [1/2, 1], which brackets B^0_{2,2} against L^2.
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto r = random_field(g, {.band = 20}, seed);
    const double ratio = besov_norm(r, {}, P) / l2_norm(r);
    CHECK(ratio >= std::sqrt(0.5) - 1e-12);
    CHECK(ratio <= 1.0 + 1e-12);
  }

  // q = inf is the largest weighted block.
  const auto r = random_field(g, {.band = 20}, 3);
  double best = 0.0;
  for (int j = 0; j <= P.j_max(); ++j) {
    best = std::max(best, std::pow(2.0, 0.5 * j) * l2_norm(dyadic_block(r, j, P)));
  }
  CHECK(besov_norm(r, {.s = 0.5, .q = INFINITY}, P) == doctest::Approx(best).epsilon(1e-14));
}

TEST_CASE("Sobolev norms and their Besov envelope") {
  const TorusGrid g(64);
  const DyadicPartition P(g);
  const auto f = sine_mode(g, 2, 0);
  CHECK(sobolev_norm(f, 1.5) == doctest::Approx(std::pow(2.0, 1.5) * l2_norm(f)).epsilon(1e-14));
  CHECK(sobolev_norm(f, 0.0) == doctest::Approx(l2_norm(f)).epsilon(1e-14));
  CHECK(sobolev_norm(f, 2.0, false) == doctest::Approx(5.0 * l2_norm(f)).epsilon(1e-14));
  CHECK_THROWS_AS(sobolev_norm(constant_field(g, 1.0), -0.5), Error);

  for (double s : {-0.5, 0.7, 1.5}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto r = random_field(g, {.band = 25}, seed);
      const double ratio = besov_norm(r, {.s = s}, P) / sobolev_norm(r, s);
      CHECK(ratio >= std::pow(2.0, -std::abs(s)) * std::sqrt(0.5) * (1 - 1e-12));
      CHECK(ratio <= std::pow(2.0, std::abs(s)) * (1 + 1e-12));
    }
  }
}

TEST_CASE("Bony decomposition") {
  const TorusGrid g(64);
  const DyadicPartition P(g);

  // Low mode in block 0, high mode in block 4: only T(f, g) survives.
  const auto lo = sine_mode(g, 1, 0);
  const auto hi = sine_mode(g, 16, 0);
  const BonyParts sep = bony_decompose(lo, hi, P);
  CHECK(sep.r_fg.values().abs().maxCoeff() == 0.0);
  CHECK(sep.t_gf.values().abs().maxCoeff() == 0.0);
  CHECK(rel_l2(sep.t_fg.values(), sep.product.values()) < 1e-14);

  const auto m = sine_mode(g, 3, 4);
  const BonyParts same = bony_decompose(m, m, P);
  const RealArray total = same.t_fg.values() + same.r_fg.values() + same.t_gf.values();
  CHECK(rel_l2(total, same.product.values()) < 1e-14);

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto f = random_field(g, {.band = 21}, seed);
    const auto h = random_field(g, {.band = 21}, seed + 100);
    const BonyParts p = bony_decompose(f, h, P);
    CHECK(p.product.grid().n() == 128);
    const RealArray sum = p.t_fg.values() + p.r_fg.values() + p.t_gf.values();
    CHECK(rel_l2(sum, p.product.values()) < 1e-10);
    // The samples are those of the exact product.
    CHECK(max_abs_diff(forward(p.product), exact_product(f, h)) /
              max_abs(exact_product(f, h)) < 1e-12);
  }
  CHECK_THROWS_AS(bony_decompose(lo + constant_field(g, 1.0), hi, P), Error);
}

TEST_CASE("product estimate ratio") {
  const TorusGrid g(64);
  const auto f = random_field(g, {.band = 20}, 1);
  const auto h = random_field(g, {.band = 20}, 2);
  CHECK(product_estimate_ratio(SpectralField(g), h, 0.5, 0.5) == 0.0);
  const double r = product_estimate_ratio(f, h, 0.5, 0.5);
  CHECK(std::isfinite(r));
  CHECK(r > 0.0);
  CHECK(product_estimate_ratio(10.0 * f, 10.0 * h, 0.5, 0.5) ==
        doctest::Approx(r).epsilon(1e-13));
  CHECK_THROWS_AS(product_estimate_ratio(f, h, 1.0, 0.5), Error);
  CHECK_THROWS_AS(product_estimate_ratio(f, h, -0.5, 0.2), Error);

  // Closed form: sin x1 * sin x2 = (cos(x1 - x2) - cos(x1 + x2)) / 2, so
  // ||fg||_{H^0} = pi and ||f||_{H^s} = ||g||_{H^s} = pi sqrt 2.
  const double pr = product_estimate_ratio(sine_mode(g, 1, 0), sine_mode(g, 0, 1), 0.3, 0.7);
  CHECK(pr == doctest::Approx(M_PI / (2.0 * M_PI * M_PI)).epsilon(1e-13));
}

TEST_CASE("log inequality") {
  const TorusGrid g(64);
  const DyadicPartition P(g);
  const double s = 3.0;
  for (int k : {1, 3, 7}) {
    const auto w = cosine_mode(g, k, 0, 1.0);
    const double u2 = M_PI * std::sqrt(2.0) / k;
    const double expect =
        1.0 / (u2 + std::log2(2.0 + std::pow(1.0 + k * k, s / 2) * u2) + 1.0);
    CHECK(log_inequality_ratio(w, s) == doctest::Approx(expect).epsilon(1e-12));
    const LogInequality li = log_inequality(w, s, P);
    CHECK(li.ratio == doctest::Approx(expect).epsilon(1e-12));
    CHECK(li.grad_linf == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(log_inequality_ratio(cosine_mode(g, 1, 0, 1.0), 2.0), Error);

  const auto w = random_field(g, {.band = 20}, 8);
  double previous = log_inequality_ratio(w, s);
  for (double amp : {1e2, 1e4, 1e6}) {
    const double r = log_inequality_ratio(amp * w, s);
    CHECK(std::isfinite(r));
    CHECK(r < 10.0 * previous);
    previous = std::max(previous, r);
  }

  const LogInequality li = log_inequality(w, s, P);
  CHECK(li.n_blocks >= 1);
  CHECK(li.n_blocks <= P.j_max());
  CHECK(li.low == 0.0);
  CHECK(li.grad_linf <= (li.low + li.middle + li.high) * (1 + 1e-12));
  CHECK(li.middle > 0.0);
}

TEST_CASE("Bernstein ratios") {
  const TorusGrid g(64);
  const DyadicPartition P(g);
  const auto axis = sine_mode(g, 8, 0);
  BernsteinRatios b = bernstein_ratio(axis, 3, 1);
  CHECK(b.low == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(b.in_annulus);
  CHECK(b.annulus_linf == doctest::Approx(1.0).epsilon(1e-12));

  const auto diag = sine_mode(g, 6, 5);  // |xi| = sqrt(61), block 3
  b = bernstein_ratio(diag, 3, 1);
  CHECK(b.low == doctest::Approx(6.0 / 8.0).epsilon(1e-14));
  CHECK(b.low >= std::sqrt(0.5));
  CHECK(bernstein_ratio(diag, 3, 0).low == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(bernstein_ratio(sine_mode(g, 20, 0), 3, 1), Error);
  CHECK_THROWS_AS(bernstein_ratio(SpectralField(g), 3, 1), Error);
  CHECK_FALSE(bernstein_ratio(sine_mode(g, 1, 0), 3, 1).in_annulus);

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto r = dyadic_block(random_field(g, {.band = 31}, seed), 3, P);
    for (int k : {1, 2}) {
      const BernsteinRatios br = bernstein_ratio(r, 3, k);
      CHECK(br.in_annulus);
      CHECK(br.annulus_l2 >= 0.25);
      CHECK(br.annulus_l2 <= 4.0);
      CHECK(br.annulus_linf >= 0.25);
      CHECK(br.annulus_linf <= 4.0);
    }
  }
}
