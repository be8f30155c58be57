#include "mhd2d/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mhd2d {

namespace {

bool zero_mean(const SpectralField& f) {
  return f.mean_coefficient() == std::complex<double>(0.0, 0.0);
}

SpectralField multiply(const SpectralField& f, const RealArray& symbol) {
  return SpectralField(f.grid(), f.coeffs() * symbol.cast<std::complex<double>>(),
                       f.dealiased());
}

// All four entries d_i u_k of the velocity gradient.
std::vector<SpectralField> velocity_gradient(const SpectralVector& u) {
  std::vector<SpectralField> out;
  for (const auto& c : u) {
    out.push_back(partial_derivative(c, 1));
    out.push_back(partial_derivative(c, 2));
  }
  return out;
}

double gradient_linf(const std::vector<SpectralField>& grad) {
  for (const auto& c : grad) {
    if (max_abs(c) != 0.0) return lp_norm_pointwise(grad, INFINITY);
  }
  return 0.0;
}

}  // namespace

double bump_profile(double r) {
  if (!(r > 0.5 && r < 2.0)) return 0.0;
  const double t = std::log2(r);
  return std::exp(-1.0 / (1.0 - t * t));
}

DyadicPartition::DyadicPartition(const TorusGrid& grid)
    : grid_(grid),
      j_min_(0),
      j_max_(int(std::ceil(std::log2(grid.n() / 2.0)))) {
  const int n = grid.n();
  const RealArray& ksq = grid.ksq();
  const int count = j_max_ - j_min_ + 1;
  phi_.assign(count, RealArray::Zero(n, n));
  zero_ = RealArray::Zero(n, n);
  std::vector<double> theta(count);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const double q = ksq(a, b);
      if (q == 0.0) continue;
      const double r = std::sqrt(q);
      double sum = 0.0;
      for (int j = j_min_; j <= j_max_; ++j) {
        // Support test in exact integer arithmetic on |xi|^2.
        const double lo = std::ldexp(1.0, 2 * (j - 1));
        const double hi = std::ldexp(1.0, 2 * (j + 1));
        theta[j - j_min_] = (q > lo && q < hi) ? bump_profile(std::ldexp(r, -j)) : 0.0;
        sum += theta[j - j_min_];
      }
      for (int j = 0; j < count; ++j) phi_[j](a, b) = theta[j] / sum;
    }
  }
  // 1 - sum_{j >= 0} Phi_j vanishes on every lattice point but the origin;
  // store the exact values rather than the rounding residue.
  psi_ = RealArray::Zero(n, n);
  psi_(0, 0) = 1.0;
}

const RealArray& DyadicPartition::phi(int j) const {
  if (j < j_min_ || j > j_max_) return zero_;
  return phi_[j - j_min_];
}

DyadicPartition build_partition(const TorusGrid& grid) {
  return DyadicPartition(grid);
}

SpectralField dyadic_block(const SpectralField& f, int j,
                           const DyadicPartition& partition, bool homogeneous) {
  require_same_grid(f.grid(), partition.grid(), "dyadic_block");
  if (!homogeneous) {
    if (j <= -2) return SpectralField(f.grid());
    if (j == -1) return multiply(f, partition.psi());
  }
  if (j < partition.j_min() || j > partition.j_max()) return SpectralField(f.grid());
  return multiply(f, partition.phi(j));
}

void BesovSpec::validate() const {
  if (!std::isfinite(s)) throw Error("BesovSpec: s must be finite");
  if (!(p >= 1.0)) throw Error("BesovSpec: p must lie in [1, inf]");
  if (!(q >= 1.0)) throw Error("BesovSpec: q must lie in [1, inf]");
}

double besov_norm(const SpectralField& f, const BesovSpec& spec,
                  const DyadicPartition& partition) {
  spec.validate();
  if (spec.homogeneous && !zero_mean(f)) {
    throw Error("besov_norm: homogeneous norm needs a zero-mean field");
  }
  const int first = spec.homogeneous ? partition.j_min() : -1;
  double acc = 0.0;
  for (int j = first; j <= partition.j_max(); ++j) {
    const SpectralField block = dyadic_block(f, j, partition, spec.homogeneous);
    if (max_abs(block) == 0.0) continue;
    const double term = std::pow(2.0, j * spec.s) * lp_norm(block, spec.p);
    if (std::isinf(spec.q)) {
      acc = std::max(acc, term);
    } else {
      acc += std::pow(term, spec.q);
    }
  }
  return std::isinf(spec.q) ? acc : std::pow(acc, 1.0 / spec.q);
}

double sobolev_norm(const SpectralField& f, double s, bool homogeneous) {
  if (!std::isfinite(s)) throw Error("sobolev_norm: s must be finite");
  const TorusGrid& g = f.grid();
  RealArray weight;
  if (homogeneous) {
    if (s < 0.0 && !zero_mean(f)) {
      throw Error("sobolev_norm: negative homogeneous index needs a zero-mean field");
    }
    weight = g.ksq().pow(s);
    weight(0, 0) = 0.0;
  } else {
    weight = (1.0 + g.ksq()).pow(s);
  }
  const double n2 = double(g.n()) * g.n();
  const double sum = (weight * f.coeffs().abs2()).sum();
  return 2.0 * M_PI * std::sqrt(sum) / n2;
}

BonyParts bony_decompose(const SpectralField& f, const SpectralField& g,
                         const DyadicPartition& partition) {
  require_same_grid(f.grid(), g.grid(), "bony_decompose");
  require_same_grid(f.grid(), partition.grid(), "bony_decompose");
  if (!zero_mean(f) || !zero_mean(g)) {
    throw Error("bony_decompose: inputs must have zero mean");
  }
  const int n = f.grid().n();
  int m = 2 * n;
  while (f.band() + g.band() >= m / 2) m *= 2;
  const TorusGrid fine(m);

  const int j0 = partition.j_min(), j1 = partition.j_max();
  const int count = j1 - j0 + 1;
  std::vector<RealArray> bf(count), bg(count);
  for (int j = j0; j <= j1; ++j) {
    bf[j - j0] = inverse(resample(dyadic_block(f, j, partition), m)).values();
    bg[j - j0] = inverse(resample(dyadic_block(g, j, partition), m)).values();
  }

  RealArray t_fg = RealArray::Zero(m, m), t_gf = RealArray::Zero(m, m);
  RealArray r_fg = RealArray::Zero(m, m);
  // S_{j-1} = sum of blocks l <= j - 2.
  RealArray sf = RealArray::Zero(m, m), sg = RealArray::Zero(m, m);
  for (int j = j0; j <= j1; ++j) {
    const int k = j - j0;
    if (k >= 2) {
      sf += bf[k - 2];
      sg += bg[k - 2];
    }
    t_fg += sf * bg[k];
    t_gf += sg * bf[k];
    for (int i = -1; i <= 1; ++i) {
      if (k + i >= 0 && k + i < count) r_fg += bf[k] * bg[k + i];
    }
  }
  RealField product = inverse(resample(f, m)) * inverse(resample(g, m));
  return {RealField(fine, std::move(t_fg)), RealField(fine, std::move(r_fg)),
          RealField(fine, std::move(t_gf)), std::move(product)};
}

double product_estimate_ratio(const SpectralField& f, const SpectralField& g,
                              double sigma1, double sigma2) {
  if (!(sigma1 < 1.0 && sigma2 < 1.0 && sigma1 + sigma2 > 0.0)) {
    throw Error("product_estimate_ratio: need sigma1, sigma2 < 1 and sigma1 + sigma2 > 0");
  }
  if (!zero_mean(f) || !zero_mean(g)) {
    throw Error("product_estimate_ratio: inputs must have zero mean");
  }
  const double den = sobolev_norm(f, sigma1) * sobolev_norm(g, sigma2);
  if (den == 0.0) return 0.0;
  SpectralField fg = exact_product(f, g);
  fg.coeffs()(0, 0) = 0.0;
  return sobolev_norm(fg, sigma1 + sigma2 - 1.0) / den;
}

namespace {

struct LogBracket {
  double grad_linf, u_l2, w_linf, u_hs;
};

LogBracket log_bracket(const SpectralField& w, const SpectralVector& u, double s) {
  LogBracket b;
  b.grad_linf = gradient_linf(velocity_gradient(u));
  b.u_l2 = std::sqrt(l2_norm_sq(u[0]) + l2_norm_sq(u[1]));
  b.w_linf = max_abs(w) == 0.0 ? 0.0 : lp_norm(w, INFINITY);
  const double h0 = sobolev_norm(u[0], s, false), h1 = sobolev_norm(u[1], s, false);
  b.u_hs = std::sqrt(h0 * h0 + h1 * h1);
  return b;
}

double bracket_ratio(const LogBracket& b) {
  return b.grad_linf / (b.u_l2 + b.w_linf * std::log2(2.0 + b.u_hs) + 1.0);
}

}  // namespace

LogInequality log_inequality(const SpectralField& w, double s,
                             const DyadicPartition& partition) {
  if (!(s > 2.0)) throw Error("log_inequality: s must exceed 2");
  require_same_grid(w.grid(), partition.grid(), "log_inequality");
  const SpectralVector u = biot_savart(w);
  const LogBracket b = log_bracket(w, u, s);
  LogInequality out;
  out.grad_linf = b.grad_linf;
  out.u_l2 = b.u_l2;
  out.w_linf = b.w_linf;
  out.u_hs = b.u_hs;
  out.ratio = bracket_ratio(b);
  const int blocks = int(std::ceil(std::log2(2.0 + b.u_hs) / (s - 2.0)));
  out.n_blocks = std::clamp(blocks, 1, partition.j_max());

  const std::vector<SpectralField> grad = velocity_gradient(u);
  auto block_linf = [&](int j) {
    std::vector<SpectralField> pieces;
    for (const auto& c : grad) pieces.push_back(dyadic_block(c, j, partition, false));
    return gradient_linf(pieces);
  };
  out.low = block_linf(-1);
  for (int j = 0; j <= partition.j_max(); ++j) {
    (j < out.n_blocks ? out.middle : out.high) += block_linf(j);
  }
  return out;
}

double log_inequality_ratio(const SpectralField& w, double s) {
  if (!(s > 2.0)) throw Error("log_inequality_ratio: s must exceed 2");
  return bracket_ratio(log_bracket(w, biot_savart(w), s));
}

BernsteinRatios bernstein_ratio(const SpectralField& f, int j, int k) {
  if (k < 0) throw Error("bernstein_ratio: k must be >= 0");
  const TorusGrid& g = f.grid();
  const double hi = std::ldexp(1.0, 2 * (j + 1));
  const double lo = std::ldexp(1.0, 2 * (j - 1));
  bool in_annulus = true;
  bool nonzero = false;
  for (Eigen::Index q = 0; q < f.coeffs().size(); ++q) {
    if (f.coeffs()(q) == std::complex<double>(0.0, 0.0)) continue;
    nonzero = true;
    const double r2 = g.ksq()(q);
    if (r2 > hi) throw Error("bernstein_ratio: support leaves the ball |xi| <= 2^(j+1)");
    if (r2 < lo) in_annulus = false;
  }
  if (!nonzero) throw Error("bernstein_ratio: zero input");

  const double scale = std::ldexp(1.0, j * k);
  std::vector<SpectralField> derivs;
  for (int a = 0; a <= k; ++a) {
    SpectralField d = f;
    for (int i = 0; i < a; ++i) d = partial_derivative(d, 1);
    for (int i = 0; i < k - a; ++i) d = partial_derivative(d, 2);
    derivs.push_back(std::move(d));
  }
  BernsteinRatios out;
  const double f2 = l2_norm(f);
  for (const auto& d : derivs) out.low = std::max(out.low, l2_norm(d) / (scale * f2));
  out.in_annulus = in_annulus;
  if (!in_annulus) {
    out.annulus_l2 = out.annulus_linf = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.annulus_l2 = out.low;
  const double finf = lp_norm(f, INFINITY);
  for (const auto& d : derivs) {
    const double v = max_abs(d) == 0.0 ? 0.0 : lp_norm(d, INFINITY);
    out.annulus_linf = std::max(out.annulus_linf, v / (scale * finf));
  }
  return out;
}

}  // namespace mhd2d
