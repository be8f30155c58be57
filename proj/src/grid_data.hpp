// Shared per-size tables and FFT plans behind TorusGrid. Internal.

#ifndef MHD2D_SRC_GRID_DATA_HPP_
#define MHD2D_SRC_GRID_DATA_HPP_

#include <fftw3.h>

#include "mhd2d/grid.hpp"

namespace mhd2d::detail {

struct GridData {
  explicit GridData(int n);
  ~GridData();
  GridData(const GridData&) = delete;
  GridData& operator=(const GridData&) = delete;

  int n;
  // Full n x n tables.
  RealArray k1, k2, ksq, nyquist;
  // Half-spectrum tables, n x (n/2 + 1): columns hold k2 = 0 .. n/2.
  RealArray hk1, hk2, hksq;
  // 1/|xi|^2 with 0 at the origin and on the Nyquist lines.
  RealArray hinv_ksq;
  // 1 on modes kept by the 2/3 rule.
  RealArray hkeep;
  // How many full-spectrum coefficients each half entry stands for.
  RealArray hmult;
  // Planned on fftw_malloc'd buffers; execute only on such buffers.
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

}  // namespace mhd2d::detail

#endif  // MHD2D_SRC_GRID_DATA_HPP_
