#include "cma/torus_grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <vector>

#include "cma/errors.hpp"

namespace cma {
namespace {

// The FFTW planner is not re-entrant; execution is.
std::mutex& planner_mutex() {
  static std::mutex mutex;
  return mutex;
}

bool smooth_size(int m) {
  for (int p : {2, 3, 5})
    while (m % p == 0) m /= p;
  return m == 1;
}

}  // namespace

TorusGrid::TorusGrid(int n, int m) : n_(n), m_(m) {
  size_ = 1;
  for (int a = 0; a < axes(); ++a) size_ *= static_cast<std::size_t>(m);
  spectrum_size_ = size_ / m * (m / 2 + 1);
  cell_volume_ = 1.0;
  for (int a = 0; a < axes(); ++a) cell_volume_ /= m;

  std::array<int, kMaxAxes> shape{};
  std::fill(shape.begin(), shape.end(), m);
  std::vector<double> real(size_);
  std::vector<std::complex<double>> spec(spectrum_size_);
  auto* creal = real.data();
  auto* cspec = reinterpret_cast<fftw_complex*>(spec.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;

  std::lock_guard<std::mutex> lock(planner_mutex());
  forward_plan_ = fftw_plan_dft_r2c(axes(), shape.data(), creal, cspec, flags);
  inverse_plan_ = fftw_plan_dft_c2r(axes(), shape.data(), cspec, creal, flags);
}

TorusGrid::~TorusGrid() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

int TorusGrid::frequency(int axis, int index) const {
  if (axis == axes() - 1) return index;
  return 2 * index <= m_ ? index : index - m_;
}

std::array<int, TorusGrid::kMaxAxes> TorusGrid::point_index(std::size_t point) const {
  std::array<int, kMaxAxes> idx{};
  for (int a = axes() - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(point % m_);
    point /= m_;
  }
  return idx;
}

double TorusGrid::coordinate(std::size_t point, int axis) const {
  return point_index(point)[axis] * spacing();
}

void TorusGrid::forward(std::span<const double> in, std::span<std::complex<double>> out) const {
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
}

void TorusGrid::inverse(std::span<const std::complex<double>> in, std::span<double> out) const {
  // c2r overwrites its input.
  std::vector<std::complex<double>> scratch(in.begin(), in.end());
  inverse_consuming(scratch, out);
}

void TorusGrid::inverse_consuming(std::span<std::complex<double>> in, std::span<double> out) const {
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_),
                       reinterpret_cast<fftw_complex*>(in.data()), out.data());
  const double norm = 1.0 / static_cast<double>(size_);
  for (double& v : out) v *= norm;
}

GridPtr make_grid(int n, int m) {
  if (n != 1 && n != 2)
    throw Error(ErrorCode::InvalidDimension, "complex dimension must be 1 or 2, got " + std::to_string(n));
  const int max_m = n == 1 ? 512 : 48;
  if (m < 8 || m > max_m || m % 2 != 0 || !smooth_size(m))
    throw Error(ErrorCode::InvalidResolution,
                "m = " + std::to_string(m) + " must be even, 2-3-5 smooth, and in [8, " +
                    std::to_string(max_m) + "]");
  return std::make_shared<const TorusGrid>(n, m);
}

}  // namespace cma
