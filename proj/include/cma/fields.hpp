#pragma once

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "cma/torus_grid.hpp"

namespace cma {

/// Real periodic function sampled on a TorusGrid.
class ScalarField {
 public:
  explicit ScalarField(GridPtr grid);
  ScalarField(GridPtr grid, std::vector<double> values);

  static ScalarField constant(GridPtr grid, double value);
  /// Samples `fn` at every grid point; `fn` receives the 2n real coordinates.
  static ScalarField sample(GridPtr grid, const std::function<double(std::span<const double>)>& fn);

  const TorusGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  std::span<const double> values() const { return values_; }
  // For builders that fill a freshly constructed field in place.
  std::span<double> mutable_values() { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  bool all_finite() const;

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double s, const ScalarField& a);
ScalarField operator+(const ScalarField& a, double c);
/// Pointwise product.
ScalarField hadamard(const ScalarField& a, const ScalarField& b);
ScalarField map(const ScalarField& a, const std::function<double(double)>& fn);

/// Holomorphic derivatives f_j = df/dz^j, n complex values per point.
/// Stored as separate real and imaginary arrays per component.
struct ComplexGradient {
  GridPtr grid;
  std::vector<std::vector<double>> re;
  std::vector<std::vector<double>> im;

  std::complex<double> at(std::size_t point, int j) const { return {re[j][point], im[j][point]}; }
  ComplexGradient conjugate() const;
};

/// n x n Hermitian matrix per point. Only the diagonal and, for n = 2, the
/// (1, 2bar) entry are stored; the (2, 1bar) entry is its conjugate, so every
/// matrix is exactly Hermitian by construction.
struct HermitianField {
  GridPtr grid;
  std::array<std::vector<double>, 2> diag;
  std::vector<double> off_re;
  std::vector<double> off_im;

  static HermitianField zeros(GridPtr grid);
  static HermitianField identity(GridPtr grid);

  int n() const { return grid->n(); }
  std::size_t size() const { return grid->size(); }
  /// Row-major n x n matrix at `point` (only the leading n*n entries are set).
  std::array<std::complex<double>, 4> at(std::size_t point) const;
  ScalarField trace() const;
};

HermitianField operator+(const HermitianField& a, const HermitianField& b);

/// Pointwise determinant and smallest eigenvalue, through the SIMD kernels.
struct DetMinEig {
  std::vector<double> det;
  std::vector<double> min_eig;
};
DetMinEig det_min_eig(const HermitianField& h);

/// Pointwise tr(M^{-1} H).
ScalarField inverse_trace(const HermitianField& metric, const HermitianField& h);

/// Pointwise g^{k lbar} a_k conj(b_l) (real part) for a Hermitian metric g.
ScalarField contract_gradients(const HermitianField& metric, const ComplexGradient& a,
                               const ComplexGradient& b);

}  // namespace cma
