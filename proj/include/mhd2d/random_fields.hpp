// Seeded random trigonometric polynomials for initial data and ensembles.

#ifndef MHD2D_RANDOM_FIELDS_HPP_
#define MHD2D_RANDOM_FIELDS_HPP_

#include <cstdint>
#include <limits>

#include "mhd2d/field.hpp"

namespace mhd2d {

/// Which modes get a random coefficient. A mode xi != 0 is drawn when
/// max(|xi1|, |xi2|) <= band and r_min <= |xi| <= r_max.
struct RandomSpectrum {
  int band = 8;
  double r_min = 0.0;
  double r_max = std::numeric_limits<double>::infinity();
  /// Amplitudes are scaled by (1 + |xi|^2)^(-slope/2).
  double slope = 0.0;
};

/// Zero-mean real field with standard-normal complex Fourier-series
/// amplitudes on the selected modes. Modes are visited in a fixed wavenumber
/// order, so the same seed yields the same function on every grid that
/// resolves the band.
SpectralField random_field(const TorusGrid& grid, const RandomSpectrum& spec,
                           std::uint64_t seed);

}  // namespace mhd2d

#endif  // MHD2D_RANDOM_FIELDS_HPP_
