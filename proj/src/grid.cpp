#include "mhd2d/grid.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <cstdlib>

#include "grid_data.hpp"

namespace mhd2d {

namespace {

// FFTW's planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::shared_ptr<const detail::GridData> grid_data(int n) {
  static std::mutex cache_mutex;
  static std::map<int, std::shared_ptr<const detail::GridData>> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto data = std::make_shared<const detail::GridData>(n);
  cache.emplace(n, data);
  return data;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

namespace detail {

GridData::GridData(int n_)
    : n(n_),
      k1(n_, n_),
      k2(n_, n_),
      ksq(n_, n_),
      nyquist(n_, n_) {
  const int h = n / 2 + 1;
  const int cut = n / 3;
  hk1.resize(n, h);
  hk2.resize(n, h);
  hksq.resize(n, h);
  hinv_ksq.resize(n, h);
  hkeep.resize(n, h);
  hmult.resize(n, h);
  for (int i = 0; i < n; ++i) {
    const int a = i < n / 2 ? i : i - n;
    for (int j = 0; j < n; ++j) {
      const int b = j < n / 2 ? j : j - n;
      k1(i, j) = a;
      k2(i, j) = b;
      ksq(i, j) = double(a) * a + double(b) * b;
      nyquist(i, j) = (a == -n / 2 || b == -n / 2) ? 1.0 : 0.0;
    }
    for (int j = 0; j < h; ++j) {
      const double q = double(a) * a + double(j) * j;
      const bool nyq = a == -n / 2 || j == n / 2;
      hk1(i, j) = a;
      hk2(i, j) = j;
      hksq(i, j) = q;
      hinv_ksq(i, j) = (q == 0.0 || nyq) ? 0.0 : 1.0 / q;
      hkeep(i, j) = (std::abs(a) <= cut && j <= cut) ? 1.0 : 0.0;
      hmult(i, j) = (j == 0 || j == n / 2) ? 1.0 : 2.0;
    }
  }
  double* real = fftw_alloc_real(std::size_t(n) * n);
  fftw_complex* c = fftw_alloc_complex(std::size_t(n) * h);
  std::lock_guard<std::mutex> lock(planner_mutex());
  r2c = fftw_plan_dft_r2c_2d(n, n, real, c, FFTW_ESTIMATE);
  c2r = fftw_plan_dft_c2r_2d(n, n, c, real, FFTW_ESTIMATE | FFTW_DESTROY_INPUT);
  fftw_free(real);
  fftw_free(c);
  if (r2c == nullptr || c2r == nullptr) {
    throw Error("FFTW planning failed for n = " + std::to_string(n));
  }
}

GridData::~GridData() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(r2c);
  fftw_destroy_plan(c2r);
}

}  // namespace detail

TorusGrid::TorusGrid(int n) : n_(n) {
  if (!is_power_of_two(n) || n < 8) {
    throw Error("grid size must be a power of two >= 8, got " +
                std::to_string(n));
  }
  data_ = grid_data(n);
}

double TorusGrid::spacing() const { return 2.0 * M_PI / n_; }

const RealArray& TorusGrid::k1() const { return data_->k1; }
const RealArray& TorusGrid::k2() const { return data_->k2; }
const RealArray& TorusGrid::ksq() const { return data_->ksq; }
const RealArray& TorusGrid::nyquist_mask() const { return data_->nyquist; }

void require_same_grid(const TorusGrid& a, const TorusGrid& b,
                       const char* where) {
  if (!(a == b)) {
    throw Error(std::string(where) + ": grid mismatch (" +
                std::to_string(a.n()) + " vs " + std::to_string(b.n()) + ")");
  }
}

}  // namespace mhd2d
