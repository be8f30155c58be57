#include "half_spectrum.hpp"

#include <cstring>
#include <map>

namespace mhd2d::detail {

namespace {

// Per-thread FFTW-aligned buffers, one pair per grid size.
struct Scratch {
  double* real = nullptr;
  fftw_complex* cplx = nullptr;

  explicit Scratch(int n) {
    real = fftw_alloc_real(std::size_t(n) * n);
    cplx = fftw_alloc_complex(std::size_t(n) * half_cols(n));
  }
  ~Scratch() {
    fftw_free(real);
    fftw_free(cplx);
  }
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;
};

Scratch& scratch(int n) {
  thread_local std::map<int, Scratch> buffers;
  auto it = buffers.find(n);
  if (it == buffers.end()) it = buffers.try_emplace(n, n).first;
  return it->second;
}

}  // namespace

ComplexArray to_half(const SpectralField& F) {
  return F.coeffs().leftCols(half_cols(F.grid().n()));
}

SpectralField from_half(const TorusGrid& grid, const ComplexArray& half,
                        bool dealiased) {
  const int n = grid.n();
  const int h = half_cols(n);
  ComplexArray full(n, n);
  for (int i = 0; i < n; ++i) {
    const int pi = (n - i) % n;
    for (int j = 0; j < h; ++j) full(i, j) = half(i, j);
    for (int j = h; j < n; ++j) full(i, j) = std::conj(half(pi, n - j));
  }
  return SpectralField(grid, std::move(full), dealiased);
}

void inverse_half(const TorusGrid& grid, const ComplexArray& half,
                  RealArray& out) {
  const int n = grid.n();
  Scratch& s = scratch(n);
  std::memcpy(s.cplx, half.data(), sizeof(fftw_complex) * half.size());
  fftw_execute_dft_c2r(grid.data().c2r, s.cplx, s.real);
  out.resize(n, n);
  out = Eigen::Map<const RealArray>(s.real, n, n) * (1.0 / (double(n) * n));
}

void forward_half(const TorusGrid& grid, const RealArray& in,
                  ComplexArray& half) {
  const int n = grid.n();
  Scratch& s = scratch(n);
  std::memcpy(s.real, in.data(), sizeof(double) * in.size());
  fftw_execute_dft_r2c(grid.data().r2c, s.real, s.cplx);
  half.resize(n, half_cols(n));
  std::memcpy(static_cast<void*>(half.data()), s.cplx,
              sizeof(fftw_complex) * half.size());
}

}  // namespace mhd2d::detail
