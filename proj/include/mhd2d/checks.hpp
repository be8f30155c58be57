// Property suites run by `mhd2d check` and the acceptance gate.
//
//   lp            partition of unity, supports, reconstruction, Bony,
//                 Bernstein and Besov/Sobolev equivalence
//   inequalities  100-member ensembles of every inequality ratio at
//                 n = 128 and n = 256
//   dynamics      spectral identities, curl vs primitive form, Leray,
//                 exact diffusion, conservation and the energy budget
//
// Ensemble fields have a fixed band, so a given seed describes the same
// trigonometric polynomial at both resolutions.

#ifndef MHD2D_CHECKS_HPP_
#define MHD2D_CHECKS_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace mhd2d {

struct PropertyResult {
  std::string suite;
  std::string name;
  bool passed = false;
  /// What was asserted, e.g. "max residual < 1e-14".
  std::string requirement;
  /// Measured values and empirical constants, in a stable order.
  std::vector<std::pair<std::string, double>> values;
};

struct CheckReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<PropertyResult> properties;

  bool passed() const;
};

std::vector<std::string> check_suite_names();

/// `suite` is one of check_suite_names() or "all". Deterministic in seed.
CheckReport run_checks(const std::string& suite, std::uint64_t seed);

}  // namespace mhd2d

#endif  // MHD2D_CHECKS_HPP_
