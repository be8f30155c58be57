#include "mhd2d/random_fields.hpp"

#include <cmath>
#include <cstdlib>
#include <random>

namespace mhd2d {

SpectralField random_field(const TorusGrid& grid, const RandomSpectrum& spec,
                           std::uint64_t seed) {
  const int n = grid.n();
  if (spec.band < 0 || spec.band >= n / 2) {
    throw Error("random_field: band must lie in [0, n/2)");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  SpectralField F(grid);
  const double n2 = double(n) * n;
  for (int k1 = -spec.band; k1 <= spec.band; ++k1) {
    for (int k2 = 0; k2 <= spec.band; ++k2) {
      if (k2 == 0 && k1 <= 0) continue;  // one representative per +-xi pair
      const double r = std::hypot(double(k1), double(k2));
      if (r < spec.r_min || r > spec.r_max) continue;
      const double re = normal(rng);
      const double im = normal(rng);
      const double amp = std::pow(1.0 + r * r, -0.5 * spec.slope);
      const std::complex<double> c = 0.5 * amp * n2 * std::complex<double>(re, im);
      F.at(k1, k2) = c;
      F.at(-k1, -k2) = std::conj(c);
    }
  }
  return F;
}

}  // namespace mhd2d
