#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace cma {

/// Uniform grid on the flat complex torus C^n / (Z + iZ)^n, n in {1, 2}.
///
/// Real axes are ordered (x1, y1, x2, y2) with z^j = x^j + i y^j; each axis
/// has period 1 and m samples at k/m. Point data is stored row-major over
/// that axis order (x1 slowest). The grid owns the FFTW plans used by every
/// spectral operation on fields defined over it, so it is shared by pointer
/// and never copied.
class TorusGrid {
 public:
  static constexpr int kMaxAxes = 4;

  TorusGrid(int n, int m);
  ~TorusGrid();
  TorusGrid(const TorusGrid&) = delete;
  TorusGrid& operator=(const TorusGrid&) = delete;

  int n() const { return n_; }
  int m() const { return m_; }
  int axes() const { return 2 * n_; }
  std::size_t size() const { return size_; }
  std::size_t spectrum_size() const { return spectrum_size_; }
  double spacing() const { return 1.0 / m_; }
  double cell_volume() const { return cell_volume_; }

  /// Signed integer frequency of spectral index `index` on `axis`. The last
  /// axis is stored as a half spectrum (r2c layout) and only carries
  /// nonnegative frequencies.
  int frequency(int axis, int index) const;
  bool is_nyquist(int index) const { return 2 * index == m_; }
  int spectral_extent(int axis) const { return axis == axes() - 1 ? m_ / 2 + 1 : m_; }

  std::array<int, kMaxAxes> point_index(std::size_t point) const;
  double coordinate(std::size_t point, int axis) const;

  /// Unnormalized forward transform of real samples.
  void forward(std::span<const double> in, std::span<std::complex<double>> out) const;
  /// Inverse transform including the 1/size normalization. `in` is not modified.
  void inverse(std::span<const std::complex<double>> in, std::span<double> out) const;
  /// Same as inverse() but uses `in` as scratch space; its contents are lost.
  void inverse_consuming(std::span<std::complex<double>> in, std::span<double> out) const;

 private:
  int n_;
  int m_;
  std::size_t size_;
  std::size_t spectrum_size_;
  double cell_volume_;
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
};

using GridPtr = std::shared_ptr<const TorusGrid>;

/// Validates (n, m) and builds the grid with its transform plans.
/// Throws InvalidDimension for n outside {1, 2} and InvalidResolution for
/// m outside [8, 512] (n = 1) or [8, 48] (n = 2), odd m, or m with prime
/// factors other than 2, 3, 5.
GridPtr make_grid(int n, int m);

}  // namespace cma
