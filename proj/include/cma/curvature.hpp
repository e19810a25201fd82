#pragma once

#include "cma/kahler_background.hpp"

namespace cma {

struct CurvatureSamples {
  HermitianField ricci;           // g^{i jbar} R_{i jbar k lbar}
  ScalarField min_bisectional;    // per point, over sampled orthonormal pairs
  double inf_bisectional = 0.0;
  double bisectional_bound = 0.0; // B
};

/// Curvature of g = I + Hess(potential):
///   R_{i jbar k lbar} = -d_k d_lbar g_{i jbar} + g^{p qbar} (d_k g_{i qbar}) (d_lbar g_{p jbar}),
/// sampled in g-orthonormal frames obtained from the pointwise Cholesky factor
/// of g and a fixed set of unitary rotations of it.
CurvatureSamples compute_curvature(const KahlerBackground& bg);

/// -d_i d_jbar log det g, computed spectrally.
HermitianField ricci_from_log_det(const KahlerBackground& bg);

}  // namespace cma
