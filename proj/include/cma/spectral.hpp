#pragma once

#include <array>
#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "cma/fields.hpp"

namespace cma {

/// Half-spectrum (r2c layout) of a real field. Compute once, differentiate
/// many times.
struct Spectrum {
  GridPtr grid;
  std::vector<std::complex<double>> coeffs;

  static Spectrum of(const ScalarField& f);
};

/// A term coef * d^{orders[0]}/dx1 ... d^{orders[3]}/dy2 of a real constant
/// coefficient differential operator.
struct Monomial {
  std::array<int, TorusGrid::kMaxAxes> orders{};
  double coef = 1.0;
};

/// Fourier multiplier of d^order/dx on one axis: (2 pi i k)^order, with the
/// Nyquist mode dropped for odd orders so real fields stay real.
std::complex<double> axis_multiplier(const TorusGrid& grid, int axis, int index, int order);

ScalarField apply_real(const Spectrum& spec, std::span<const Monomial> terms);

/// One complex derivative factor: d/dz^index, or d/dzbar^index when conj.
struct Wirtinger {
  int index;
  bool conj;
};

/// Applies a product of Wirtinger derivatives to a real field; returns the
/// (real, imaginary) parts.
std::pair<ScalarField, ScalarField> apply_wirtinger(const Spectrum& spec,
                                                    std::span<const Wirtinger> factors);

ComplexGradient holomorphic_gradient(const ScalarField& f);
ComplexGradient holomorphic_gradient(const Spectrum& spec);
ComplexGradient antiholomorphic_gradient(const ScalarField& f);

/// f_{i jbar} = d^2 f / dz^i dzbar^j.
HermitianField mixed_hessian(const ScalarField& f);
HermitianField mixed_hessian(const Spectrum& spec);

/// Flat real Laplacian sum_a d^2/dx_a^2 (four times the complex trace).
ScalarField real_laplacian(const ScalarField& f);

/// Partial derivative along one real axis.
ScalarField partial(const ScalarField& f, int axis, int order = 1);

/// Solves (1/4) Lap psi + shift * psi = rhs in Fourier space. For shift = 0
/// the mean mode is set to zero.
ScalarField flat_inverse(const ScalarField& rhs, double shift);
Spectrum flat_inverse(const Spectrum& rhs, double shift);

/// Back to point values.
ScalarField to_field(const Spectrum& spec);

}  // namespace cma
