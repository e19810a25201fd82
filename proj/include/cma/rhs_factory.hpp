#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cma/kahler_background.hpp"

namespace cma {

enum class RhsKind { Smooth, Cusp, Manufactured };

const char* to_string(RhsKind kind);

/// amplitude * cos(2 pi freq x_axis) or amplitude * sin(2 pi freq x_axis).
struct TrigTerm {
  double amplitude = 0.0;
  bool sine = false;
  int axis = 0;
  int frequency = 1;
};

/// Sum of trig terms sampled on the grid. Throws ValidationError for an
/// axis outside the grid.
ScalarField trig_field(const GridPtr& grid, const std::vector<TrigTerm>& terms);

struct RhsSpec {
  RhsKind kind = RhsKind::Smooth;
  std::uint64_t seed = 1;
  double amplitude = 0.5;
  int bandwidth = 4;  // smooth: modes |k_a| <= bandwidth per axis
  std::array<double, TorusGrid::kMaxAxes> center{};
  double beta = 0.6;
  double cutoff_radius = 0.25;
  double mollification = 0.0;  // 0 selects 2h
  double p0 = 8.0;
  std::vector<TrigTerm> potential;  // manufactured phi*

  void validate(int n) const;
};

/// A generated right-hand side together with how it was made. Rough (cusp)
/// data is remembered so pointwise third-derivative checks can refuse it.
struct RightHandSide {
  ScalarField F;
  RhsKind kind = RhsKind::Smooth;
  ScalarField exact_phi;  // manufactured solution, empty otherwise
  bool has_exact = false;
};

ScalarField smooth_random_F(const RhsSpec& spec, const KahlerBackground& bg);
ScalarField cusp_F(const RhsSpec& spec, const KahlerBackground& bg);
/// log det(g + Hess phi*) - log det g, normalized. Throws NotPositive unless
/// g + Hess phi* is positive definite everywhere.
ScalarField manufactured_F(const ScalarField& phi_star, const KahlerBackground& bg);

RightHandSide generate_rhs(const RhsSpec& spec, const KahlerBackground& bg);

/// (||F||_p^p + || |grad F| ||_p^p)^{1/p} against dvol_g, with
/// |grad F|^2 = 2 g^{k lbar} F_k F_lbar.
double w1p_norm(const ScalarField& F, double p, const KahlerBackground& bg);

/// Flat torus distance of every grid point to `center`.
ScalarField torus_distance(const GridPtr& grid, const std::array<double, TorusGrid::kMaxAxes>& center);

}  // namespace cma
