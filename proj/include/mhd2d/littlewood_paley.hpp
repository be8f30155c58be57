// Dyadic (Littlewood-Paley) decomposition on the lattice, Besov and Sobolev
// norms, Bony's paraproduct split, and the ratios behind the product, log
// and Bernstein inequalities.
//
// Block j has multiplier Phi_j(xi) = theta(2^-j |xi|) / sum_k theta(2^-k |xi|)
// with theta a smooth bump supported in (1/2, 2), so supp Phi_j lies in the
// open annulus 2^(j-1) < |xi| < 2^(j+1). On the lattice |xi| >= 1 away from
// the origin, hence the resolved range starts at j = 0 and the
// low-frequency multiplier Psi is the mean.

#ifndef MHD2D_LITTLEWOOD_PALEY_HPP_
#define MHD2D_LITTLEWOOD_PALEY_HPP_

#include <vector>

#include "mhd2d/spectral.hpp"

namespace mhd2d {

/// Smooth profile exp(-1 / (1 - t^2)), t = log2(r), zero outside (1/2, 2).
double bump_profile(double r);

class DyadicPartition {
 public:
  explicit DyadicPartition(const TorusGrid& grid);

  const TorusGrid& grid() const { return grid_; }
  int j_min() const { return j_min_; }
  int j_max() const { return j_max_; }
  /// Phi_j on the full n x n lattice; zero array outside [j_min, j_max].
  const RealArray& phi(int j) const;
  /// 1 - sum_{j >= 0} Phi_j.
  const RealArray& psi() const { return psi_; }

 private:
  TorusGrid grid_;
  int j_min_;
  int j_max_;
  std::vector<RealArray> phi_;
  RealArray psi_;
  RealArray zero_;
};

DyadicPartition build_partition(const TorusGrid& grid);

/// Homogeneous: Phi_j f. Inhomogeneous: 0 for j <= -2, Psi f for j = -1,
/// Phi_j f for j >= 0.
SpectralField dyadic_block(const SpectralField& f, int j,
                           const DyadicPartition& partition,
                           bool homogeneous = true);

struct BesovSpec {
  double s = 0.0;
  double p = 2.0;
  double q = 2.0;
  bool homogeneous = true;

  void validate() const;
};

/// (sum_j (2^{js} ||Delta_j f||_{L^p})^q)^{1/q} over the resolved blocks,
/// sup over j for q = infinity. The homogeneous norm needs zero-mean f.
double besov_norm(const SpectralField& f, const BesovSpec& spec,
                  const DyadicPartition& partition);

/// Plancherel value with symbol |xi|^s (homogeneous, mean dropped) or
/// (1 + |xi|^2)^{s/2}.
double sobolev_norm(const SpectralField& f, double s, bool homogeneous = true);

/// fg = T(f, g) + R(f, g) + T(g, f) sampled on a padded grid where every
/// partial product is alias-free.
struct BonyParts {
  RealField t_fg;
  RealField r_fg;
  RealField t_gf;
  RealField product;
};

BonyParts bony_decompose(const SpectralField& f, const SpectralField& g,
                         const DyadicPartition& partition);

/// ||fg||_{H^{s1+s2-1}} / (||f||_{H^s1} ||g||_{H^s2}), homogeneous norms,
/// the product taken without aliasing and its mean dropped.
/// Requires s1, s2 < 1 and s1 + s2 > 0.
double product_estimate_ratio(const SpectralField& f, const SpectralField& g,
                              double sigma1, double sigma2);

/// ||grad u||_inf against ||u||_2 + ||w||_inf log2(2 + ||u||_{H^s}) + 1 for
/// u = biot_savart(w), together with the three-term block split
/// ||grad u||_inf <= low + middle + high: low is the Psi block, middle the
/// blocks 0 .. n_blocks - 1 and high the rest, each measured in L^inf with
/// the pointwise Frobenius norm of the gradient.
struct LogInequality {
  double ratio = 0.0;
  double grad_linf = 0.0;
  double u_l2 = 0.0;
  double w_linf = 0.0;
  double u_hs = 0.0;
  int n_blocks = 0;
  double low = 0.0;
  double middle = 0.0;
  double high = 0.0;
};

/// n_blocks = ceil(log2(2 + ||u||_{H^s}) / (s - 2)) clamped to
/// [1, j_max]. Requires s > 2.
LogInequality log_inequality(const SpectralField& w, double s,
                             const DyadicPartition& partition);
double log_inequality_ratio(const SpectralField& w, double s);

/// Ratios sup_{|gamma| = k} ||d^gamma f|| / (2^{jk} ||f||).
/// `low` is the L^2 ratio for f supported in the ball |xi| <= 2^(j+1);
/// the annulus ratios (L^2 and L^inf) are filled when the support also lies
/// in 2^(j-1) <= |xi| <= 2^(j+1), NaN otherwise.
struct BernsteinRatios {
  double low = 0.0;
  bool in_annulus = false;
  double annulus_l2 = 0.0;
  double annulus_linf = 0.0;
};

BernsteinRatios bernstein_ratio(const SpectralField& f, int j, int k);

}  // namespace mhd2d

#endif  // MHD2D_LITTLEWOOD_PALEY_HPP_
