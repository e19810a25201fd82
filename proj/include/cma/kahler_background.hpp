#pragma once

#include "cma/fields.hpp"

namespace cma {

enum class BackgroundMode { Flat, Perturbed };

/// Background Kahler metric g = I + mixed_hessian(potential) on the torus.
/// In flat mode the potential is zero, g = I, B = inf_bisectional = 0 and
/// the volume is 1.
struct KahlerBackground {
  GridPtr grid;
  BackgroundMode mode = BackgroundMode::Flat;
  ScalarField potential;
  HermitianField metric;
  ScalarField det;      // det g_{i jbar}
  ScalarField log_det;  // log det g_{i jbar}
  double min_eig = 1.0;
  // Smallest B >= 0 with R_{i jbar k lbar} >= -B (g_{i jbar} g_{k lbar} + g_{i lbar} g_{k jbar})
  // over the sampled frames.
  double bisectional_bound = 0.0;
  // Infimum of R_{i ibar l lbar}, i != l, over sampled g-orthonormal frames.
  double inf_bisectional = 0.0;
  double volume = 1.0;  // integral of det g

  bool flat() const { return mode == BackgroundMode::Flat; }
};

KahlerBackground flat_background(GridPtr grid);

/// Builds g = I + Hess(potential). Rejects (NotPositive) metrics whose
/// smallest eigenvalue anywhere drops below 0.1, then samples curvature.
KahlerBackground perturbed_background(const ScalarField& potential);

}  // namespace cma
