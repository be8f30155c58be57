// Periodic square [0, 2*pi)^2 sampled on an n x n lattice.

#ifndef MHD2D_GRID_HPP_
#define MHD2D_GRID_HPP_

#include <complex>
#include <memory>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace mhd2d {

using RealArray =
    Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexArray = Eigen::Array<std::complex<double>, Eigen::Dynamic,
                                  Eigen::Dynamic, Eigen::RowMajor>;

/// Raised on contract violations (bad sizes, mismatched grids, domain errors).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {
struct GridData;
}

/// The torus discretization. Index i along either axis maps to the integer
/// wavenumber i for i < n/2 and i - n otherwise, so every component lies in
/// [-n/2, n/2). Row index is the first coordinate x1, column index x2.
///
/// Grids are cheap handles: wavenumber tables and FFT plans are shared by
/// every grid of the same size.
class TorusGrid {
 public:
  explicit TorusGrid(int n);

  int n() const { return n_; }
  double spacing() const;
  /// Number of samples, n*n.
  Eigen::Index size() const { return Eigen::Index(n_) * n_; }

  /// Wavenumber of array index i (either axis).
  int wavenumber(int index) const { return index < n_ / 2 ? index : index - n_; }
  /// Array index of wavenumber k; k is reduced modulo n.
  int index(int k) const { return ((k % n_) + n_) % n_; }
  /// Largest retained wavenumber component under the 2/3 rule.
  int dealias_cutoff() const { return n_ / 3; }

  /// Per-index wavenumber tables, n x n.
  const RealArray& k1() const;
  const RealArray& k2() const;
  /// |xi|^2, n x n.
  const RealArray& ksq() const;
  /// 1 where either component equals -n/2 (the unpaired Nyquist line).
  const RealArray& nyquist_mask() const;

  const detail::GridData& data() const { return *data_; }

  friend bool operator==(const TorusGrid& a, const TorusGrid& b) {
    return a.n_ == b.n_;
  }

 private:
  int n_;
  std::shared_ptr<const detail::GridData> data_;
};

/// Throws unless both grids have the same size.
void require_same_grid(const TorusGrid& a, const TorusGrid& b,
                       const char* where);

}  // namespace mhd2d

#endif  // MHD2D_GRID_HPP_
