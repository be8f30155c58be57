// Real samples and Fourier coefficients of scalar fields on a TorusGrid.

#ifndef MHD2D_FIELD_HPP_
#define MHD2D_FIELD_HPP_

#include <complex>
#include <utility>

#include "mhd2d/grid.hpp"

namespace mhd2d {

/// n x n real samples f(x1_i, x2_j), x_i = 2*pi*i/n, row-major.
class RealField {
 public:
  explicit RealField(TorusGrid grid)
      : grid_(grid), values_(RealArray::Zero(grid.n(), grid.n())) {}
  RealField(TorusGrid grid, RealArray values);

  const TorusGrid& grid() const { return grid_; }
  const RealArray& values() const { return values_; }
  RealArray& values() { return values_; }

  double operator()(int i1, int i2) const { return values_(i1, i2); }
  double& operator()(int i1, int i2) { return values_(i1, i2); }

  bool all_finite() const { return values_.isFinite().all(); }

 private:
  TorusGrid grid_;
  RealArray values_;
};

/// Unnormalized discrete Fourier coefficients, full n x n array indexed by
/// TorusGrid::index. Coefficient at xi equals sum_x f(x) exp(-i xi.x), so a
/// unit-amplitude mode exp(i xi.x) has coefficient n^2.
class SpectralField {
 public:
  explicit SpectralField(TorusGrid grid)
      : grid_(grid), coeffs_(ComplexArray::Zero(grid.n(), grid.n())) {}
  SpectralField(TorusGrid grid, ComplexArray coeffs, bool dealiased = false);

  const TorusGrid& grid() const { return grid_; }
  const ComplexArray& coeffs() const { return coeffs_; }
  ComplexArray& coeffs() { return coeffs_; }

  /// Coefficient of wavenumber (k1, k2), components taken modulo n.
  std::complex<double> at(int k1, int k2) const {
    return coeffs_(grid_.index(k1), grid_.index(k2));
  }
  std::complex<double>& at(int k1, int k2) {
    return coeffs_(grid_.index(k1), grid_.index(k2));
  }
  std::complex<double> mean_coefficient() const { return coeffs_(0, 0); }

  bool dealiased() const { return dealiased_; }
  void set_dealiased(bool flag) { dealiased_ = flag; }

  /// Largest |coeff(xi) - conj(coeff(-xi))| over the lattice.
  double hermitian_defect() const;
  /// Largest max(|xi1|, |xi2|) over nonzero coefficients; 0 for a constant
  /// or zero field.
  int band() const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s) {
    coeffs_ *= s;
    return *this;
  }

 private:
  TorusGrid grid_;
  ComplexArray coeffs_;
  bool dealiased_ = false;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a);
SpectralField operator*(double s, SpectralField a);

RealField operator+(RealField a, const RealField& b);
RealField operator-(RealField a, const RealField& b);
/// Pointwise product (collocation; aliasing is the caller's concern).
RealField operator*(const RealField& a, const RealField& b);
RealField operator*(double s, RealField a);

/// Largest coefficient modulus.
double max_abs(const SpectralField& f);
/// Largest modulus of the coefficient-wise difference.
double max_abs_diff(const SpectralField& a, const SpectralField& b);
/// max_abs_diff(a, b) / max(max_abs(a), max_abs(b)); 0 if both vanish.
double max_rel_diff(const SpectralField& a, const SpectralField& b);

}  // namespace mhd2d

#endif  // MHD2D_FIELD_HPP_
