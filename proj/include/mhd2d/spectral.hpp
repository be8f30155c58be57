// Transforms, Fourier multipliers and Biot-Savart inversion on the torus.
//
// Normalization: forward() is unnormalized, inverse() carries 1/n^2. With
// F = forward(f),
//
//   mean(f^2)            = sum |F|^2 / n^4
//   ||f||^2_{L^2(T^2)}   = (2 pi)^2 sum |F|^2 / n^4
//
// Multipliers whose symbol is odd in a single component (derivatives,
// Biot-Savart, Leray) zero the Nyquist line xi_i = -n/2, which has no
// Hermitian partner on the lattice. Radial symbols keep it.

#ifndef MHD2D_SPECTRAL_HPP_
#define MHD2D_SPECTRAL_HPP_

#include <array>
#include <vector>

#include "mhd2d/field.hpp"

namespace mhd2d {

/// A planar vector field as two spectral components.
using SpectralVector = std::array<SpectralField, 2>;

SpectralField forward(const RealField& f);
RealField inverse(const SpectralField& F);

/// Lambda^{2 gamma}: multiplies each coefficient by |xi|^{2 gamma}. The mean
/// coefficient is zeroed for gamma > 0 and kept for gamma == 0. Negative gamma
/// (>= -1) requires a zero mean.
SpectralField fractional_laplacian(const SpectralField& F, double gamma);
/// Lambda^s, i.e. fractional_laplacian(F, s / 2).
SpectralField lambda_power(const SpectralField& F, double s);

/// d/dx_axis for axis 1 or 2.
SpectralField partial_derivative(const SpectralField& F, int axis);
/// (-d2 psi, d1 psi).
SpectralVector perp_gradient(const SpectralField& psi);
SpectralVector gradient(const SpectralField& F);

/// d1 v2 - d2 v1.
SpectralField curl(const SpectralVector& v);
/// d1 v1 + d2 v2.
SpectralField divergence(const SpectralVector& v);

/// Divergence-free velocity with curl w and zero mean:
/// u_hat = (i xi2, -i xi1) w_hat / |xi|^2. Rejects w with a nonzero mean.
SpectralVector biot_savart(const SpectralField& w);

/// 2/3 rule: zero every coefficient with max(|xi1|, |xi2|) > n/3.
SpectralField dealias(SpectralField F);
bool is_dealiased(const SpectralField& F);

/// Same trigonometric polynomial on an m x m grid. Zero-pads for m > n
/// (splitting the Nyquist line evenly so the result stays real); truncates
/// for m < n (modes with |xi_i| > m/2 dropped, +-m/2 folded together).
SpectralField resample(const SpectralField& F, int m);
/// Physical samples on a factor*n grid; used for L^p and L^inf norms.
RealField oversampled(const SpectralField& F, int factor = 4);

/// Collocation product on the field's own grid, followed by the 2/3 rule.
/// Exact on retained modes when both inputs are dealiased.
SpectralField dealiased_product(const SpectralField& a, const SpectralField& b);
/// Alias-free product of two trigonometric polynomials. The result lives on
/// the smallest grid (n, 2n, 4n, ...) that resolves band(a) + band(b).
SpectralField exact_product(const SpectralField& a, const SpectralField& b);

/// L^2(T^2) norm via Plancherel.
double l2_norm(const SpectralField& F);
double l2_norm_sq(const SpectralField& F);
/// Real part of the L^2(T^2) inner product.
double l2_inner(const SpectralField& a, const SpectralField& b);
/// L^p(T^2) norm; p == 2 uses Plancherel, other p (including infinity) are
/// evaluated on the 4x oversampled grid.
double lp_norm(const SpectralField& F, double p);
/// Several exponents from one oversampled transform.
std::vector<double> lp_norms(const SpectralField& F, const std::vector<double>& ps);
/// L^p norm of the pointwise Euclidean length of a set of components.
double lp_norm_pointwise(const std::vector<SpectralField>& components,
                         double p);

/// Constant field and single real modes, handy for examples and tests.
SpectralField constant_field(const TorusGrid& grid, double value);
/// amplitude * cos(k1 x1 + k2 x2 + phase).
SpectralField cosine_mode(const TorusGrid& grid, int k1, int k2,
                          double amplitude, double phase = 0.0);

}  // namespace mhd2d

#endif  // MHD2D_SPECTRAL_HPP_
