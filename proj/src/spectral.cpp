#include "mhd2d/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "half_spectrum.hpp"

namespace mhd2d {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
const std::complex<double> kI(0.0, 1.0);

// Multiplies by i*k_axis, dropping the Nyquist line of that axis.
ComplexArray times_i_k(const SpectralField& F, int axis) {
  const TorusGrid& g = F.grid();
  const int n = g.n();
  const RealArray& k = axis == 1 ? g.k1() : g.k2();
  ComplexArray out(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double kk = k(i, j);
      out(i, j) = kk == -n / 2 ? 0.0 : kI * kk * F.coeffs()(i, j);
    }
  }
  return out;
}

}  // namespace

SpectralField forward(const RealField& f) {
  if (!f.all_finite()) throw Error("forward: non-finite input");
  ComplexArray half;
  detail::forward_half(f.grid(), f.values(), half);
  return detail::from_half(f.grid(), half, false);
}

RealField inverse(const SpectralField& F) {
  RealArray out;
  detail::inverse_half(F.grid(), detail::to_half(F), out);
  return RealField(F.grid(), std::move(out));
}

SpectralField fractional_laplacian(const SpectralField& F, double gamma) {
  if (!std::isfinite(gamma) || gamma < -1.0) {
    throw Error("fractional_laplacian: exponent must be finite and >= -1");
  }
  if (gamma < 0.0 && F.mean_coefficient() != std::complex<double>(0.0, 0.0)) {
    throw Error(
        "fractional_laplacian: negative exponent on a field with nonzero mean");
  }
  if (gamma == 0.0) return F;
  RealArray symbol = F.grid().ksq().pow(gamma);
  symbol(0, 0) = 0.0;
  SpectralField out(F.grid(), F.coeffs() * symbol.cast<std::complex<double>>(),
                    F.dealiased());
  return out;
}

SpectralField lambda_power(const SpectralField& F, double s) {
  return fractional_laplacian(F, 0.5 * s);
}

SpectralField partial_derivative(const SpectralField& F, int axis) {
  if (axis != 1 && axis != 2) throw Error("partial_derivative: axis must be 1 or 2");
  return SpectralField(F.grid(), times_i_k(F, axis), F.dealiased());
}

SpectralVector perp_gradient(const SpectralField& psi) {
  return {-partial_derivative(psi, 2), partial_derivative(psi, 1)};
}

SpectralVector gradient(const SpectralField& F) {
  return {partial_derivative(F, 1), partial_derivative(F, 2)};
}

SpectralField curl(const SpectralVector& v) {
  return partial_derivative(v[1], 1) - partial_derivative(v[0], 2);
}

SpectralField divergence(const SpectralVector& v) {
  return partial_derivative(v[0], 1) + partial_derivative(v[1], 2);
}

SpectralVector biot_savart(const SpectralField& w) {
  if (w.mean_coefficient() != std::complex<double>(0.0, 0.0)) {
    throw Error("biot_savart: vorticity must have zero mean");
  }
  const TorusGrid& g = w.grid();
  const int n = g.n();
  ComplexArray u1(n, n), u2(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double a = g.k1()(i, j), b = g.k2()(i, j), q = g.ksq()(i, j);
      if (q == 0.0) {
        u1(i, j) = u2(i, j) = 0.0;
        continue;
      }
      const std::complex<double> c = w.coeffs()(i, j) / q;
      u1(i, j) = b == -n / 2 ? 0.0 : kI * b * c;
      u2(i, j) = a == -n / 2 ? 0.0 : -kI * a * c;
    }
  }
  return {SpectralField(g, std::move(u1), w.dealiased()),
          SpectralField(g, std::move(u2), w.dealiased())};
}

SpectralField dealias(SpectralField F) {
  const TorusGrid& g = F.grid();
  const int n = g.n();
  const int cut = g.dealias_cutoff();
  for (int i = 0; i < n; ++i) {
    const bool row_out = std::abs(g.wavenumber(i)) > cut;
    for (int j = 0; j < n; ++j) {
      if (row_out || std::abs(g.wavenumber(j)) > cut) F.coeffs()(i, j) = 0.0;
    }
  }
  F.set_dealiased(true);
  return F;
}

bool is_dealiased(const SpectralField& F) {
  return F.band() <= F.grid().dealias_cutoff();
}

SpectralField resample(const SpectralField& F, int m) {
  const TorusGrid& src = F.grid();
  const int n = src.n();
  if (m == n) return F;
  const TorusGrid dst(m);
  const double scale = (double(m) * m) / (double(n) * n);
  ComplexArray out = ComplexArray::Zero(m, m);

  struct Target {
    int index;
    double weight;
  };
  // Per-axis destinations of each source index.
  std::vector<std::vector<Target>> map(n);
  for (int i = 0; i < n; ++i) {
    const int k = src.wavenumber(i);
    if (m > n) {
      if (k == -n / 2) {
        map[i] = {{dst.index(-n / 2), 0.5}, {dst.index(n / 2), 0.5}};
      } else {
        map[i] = {{dst.index(k), 1.0}};
      }
    } else if (std::abs(k) <= m / 2) {
      map[i] = {{dst.index(k), 1.0}};
    }
  }
  for (int i = 0; i < n; ++i) {
    for (const Target& ti : map[i]) {
      for (int j = 0; j < n; ++j) {
        for (const Target& tj : map[j]) {
          out(ti.index, tj.index) +=
              (scale * ti.weight * tj.weight) * F.coeffs()(i, j);
        }
      }
    }
  }
  return SpectralField(dst, std::move(out));
}

RealField oversampled(const SpectralField& F, int factor) {
  if (factor < 1) throw Error("oversampled: factor must be >= 1");
  return inverse(resample(F, factor * F.grid().n()));
}

SpectralField dealiased_product(const SpectralField& a,
                                const SpectralField& b) {
  require_same_grid(a.grid(), b.grid(), "dealiased_product");
  return dealias(forward(inverse(a) * inverse(b)));
}

SpectralField exact_product(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid(), b.grid(), "exact_product");
  const int band = a.band() + b.band();
  int m = a.grid().n();
  while (band >= m / 2) m *= 2;
  SpectralField p = forward(inverse(resample(a, m)) * inverse(resample(b, m)));
  // Everything beyond the known band is round-off.
  const TorusGrid& g = p.grid();
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (std::abs(g.wavenumber(i)) > band || std::abs(g.wavenumber(j)) > band) {
        p.coeffs()(i, j) = 0.0;
      }
    }
  }
  return p;
}

double l2_norm_sq(const SpectralField& F) {
  const double n2 = double(F.grid().n()) * F.grid().n();
  return kTwoPi * kTwoPi * F.coeffs().abs2().sum() / (n2 * n2);
}

double l2_norm(const SpectralField& F) { return std::sqrt(l2_norm_sq(F)); }

double l2_inner(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid(), b.grid(), "l2_inner");
  const double n2 = double(a.grid().n()) * a.grid().n();
  const double s = (a.coeffs().conjugate() * b.coeffs()).real().sum();
  return kTwoPi * kTwoPi * s / (n2 * n2);
}

namespace {

double lp_of_samples(const RealArray& v, double p) {
  if (std::isinf(p)) return v.abs().maxCoeff();
  const double mean = v.abs().pow(p).mean();
  return std::pow(kTwoPi * kTwoPi * mean, 1.0 / p);
}

}  // namespace

double lp_norm(const SpectralField& F, double p) {
  if (!(p >= 1.0)) throw Error("lp_norm: p must be >= 1");
  if (p == 2.0) return l2_norm(F);
  return lp_of_samples(oversampled(F).values(), p);
}

std::vector<double> lp_norms(const SpectralField& F,
                             const std::vector<double>& ps) {
  RealArray samples;
  std::vector<double> out;
  for (double p : ps) {
    if (!(p >= 1.0)) throw Error("lp_norms: p must be >= 1");
    if (p == 2.0) {
      out.push_back(l2_norm(F));
      continue;
    }
    if (samples.size() == 0) samples = oversampled(F).values();
    out.push_back(lp_of_samples(samples, p));
  }
  return out;
}

double lp_norm_pointwise(const std::vector<SpectralField>& components,
                         double p) {
  if (components.empty()) throw Error("lp_norm_pointwise: no components");
  if (!(p >= 1.0)) throw Error("lp_norm_pointwise: p must be >= 1");
  if (p == 2.0) {
    double s = 0.0;
    for (const auto& c : components) s += l2_norm_sq(c);
    return std::sqrt(s);
  }
  RealArray sq;
  for (const auto& c : components) {
    RealArray v = oversampled(c).values();
    if (sq.size() == 0) {
      sq = v.square();
    } else {
      sq += v.square();
    }
  }
  return lp_of_samples(sq.sqrt(), p);
}

SpectralField constant_field(const TorusGrid& grid, double value) {
  SpectralField F(grid);
  F.coeffs()(0, 0) = value * double(grid.n()) * grid.n();
  return F;
}

SpectralField cosine_mode(const TorusGrid& grid, int k1, int k2,
                          double amplitude, double phase) {
  const int n = grid.n();
  if (std::abs(k1) >= n / 2 || std::abs(k2) >= n / 2) {
    throw Error("cosine_mode: wavenumber not resolved on this grid");
  }
  SpectralField F(grid);
  const double n2 = double(n) * n;
  if (k1 == 0 && k2 == 0) {
    F.at(0, 0) = amplitude * std::cos(phase) * n2;
    return F;
  }
  const std::complex<double> c = 0.5 * amplitude * n2 * std::polar(1.0, phase);
  F.at(k1, k2) += c;
  F.at(-k1, -k2) += std::conj(c);
  return F;
}

}  // namespace mhd2d
