// Half-spectrum (r2c layout) helpers used on the hot paths. Internal.
//
// A half array is n x (n/2 + 1), row-major, holding the coefficients with
// k2 index 0 .. n/2 of a Hermitian full spectrum.

#ifndef MHD2D_SRC_HALF_SPECTRUM_HPP_
#define MHD2D_SRC_HALF_SPECTRUM_HPP_

#include "grid_data.hpp"
#include "mhd2d/field.hpp"

namespace mhd2d::detail {

inline int half_cols(int n) { return n / 2 + 1; }

ComplexArray to_half(const SpectralField& F);
/// Expands by Hermitian symmetry.
SpectralField from_half(const TorusGrid& grid, const ComplexArray& half,
                        bool dealiased);

/// Physical samples (with the 1/n^2 factor) of a half spectrum.
void inverse_half(const TorusGrid& grid, const ComplexArray& half,
                  RealArray& out);
/// Unnormalized half spectrum of real samples.
void forward_half(const TorusGrid& grid, const RealArray& in,
                  ComplexArray& half);

}  // namespace mhd2d::detail

#endif  // MHD2D_SRC_HALF_SPECTRUM_HPP_
