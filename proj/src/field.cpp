#include "mhd2d/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace mhd2d {

namespace {

void require_square(const TorusGrid& grid, Eigen::Index rows, Eigen::Index cols,
                    const char* what) {
  if (rows != grid.n() || cols != grid.n()) {
    throw Error(std::string(what) + ": array shape does not match grid");
  }
}

}  // namespace

RealField::RealField(TorusGrid grid, RealArray values)
    : grid_(grid), values_(std::move(values)) {
  require_square(grid_, values_.rows(), values_.cols(), "RealField");
}

SpectralField::SpectralField(TorusGrid grid, ComplexArray coeffs,
                             bool dealiased)
    : grid_(grid), coeffs_(std::move(coeffs)), dealiased_(dealiased) {
  require_square(grid_, coeffs_.rows(), coeffs_.cols(), "SpectralField");
}

double SpectralField::hermitian_defect() const {
  const int n = grid_.n();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const int pi = (n - i) % n;
    for (int j = 0; j < n; ++j) {
      const int pj = (n - j) % n;
      worst = std::max(worst, std::abs(coeffs_(i, j) - std::conj(coeffs_(pi, pj))));
    }
  }
  return worst;
}

int SpectralField::band() const {
  const int n = grid_.n();
  int b = 0;
  for (int i = 0; i < n; ++i) {
    const int a1 = std::abs(grid_.wavenumber(i));
    for (int j = 0; j < n; ++j) {
      if (coeffs_(i, j) != std::complex<double>(0.0, 0.0)) {
        b = std::max({b, a1, std::abs(grid_.wavenumber(j))});
      }
    }
  }
  return b;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_, "SpectralField +=");
  coeffs_ += other.coeffs_;
  dealiased_ = dealiased_ && other.dealiased_;
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_, "SpectralField -=");
  coeffs_ -= other.coeffs_;
  dealiased_ = dealiased_ && other.dealiased_;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) {
  a += b;
  return a;
}

SpectralField operator-(SpectralField a, const SpectralField& b) {
  a -= b;
  return a;
}

SpectralField operator-(SpectralField a) {
  a.coeffs() = -a.coeffs();
  return a;
}

SpectralField operator*(double s, SpectralField a) {
  a *= s;
  return a;
}

RealField operator+(RealField a, const RealField& b) {
  require_same_grid(a.grid(), b.grid(), "RealField +");
  a.values() += b.values();
  return a;
}

RealField operator-(RealField a, const RealField& b) {
  require_same_grid(a.grid(), b.grid(), "RealField -");
  a.values() -= b.values();
  return a;
}

RealField operator*(const RealField& a, const RealField& b) {
  require_same_grid(a.grid(), b.grid(), "RealField *");
  return RealField(a.grid(), a.values() * b.values());
}

RealField operator*(double s, RealField a) {
  a.values() *= s;
  return a;
}

double max_abs(const SpectralField& f) {
  return f.coeffs().abs().maxCoeff();
}

double max_abs_diff(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid(), b.grid(), "max_abs_diff");
  return (a.coeffs() - b.coeffs()).abs().maxCoeff();
}

double max_rel_diff(const SpectralField& a, const SpectralField& b) {
  const double scale = std::max(max_abs(a), max_abs(b));
  if (scale == 0.0) return 0.0;
  return max_abs_diff(a, b) / scale;
}

}  // namespace mhd2d
