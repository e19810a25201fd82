#include "cma/kahler_background.hpp"

#include <algorithm>
#include <cmath>

#include "cma/curvature.hpp"
#include "cma/errors.hpp"
#include "cma/quadrature.hpp"
#include "cma/spectral.hpp"

namespace cma {

KahlerBackground flat_background(GridPtr grid) {
  return KahlerBackground{
      .grid = grid,
      .mode = BackgroundMode::Flat,
      .potential = ScalarField(grid),
      .metric = HermitianField::identity(grid),
      .det = ScalarField::constant(grid, 1.0),
      .log_det = ScalarField(grid),
  };
}

KahlerBackground perturbed_background(const ScalarField& potential) {
  const GridPtr& grid = potential.grid_ptr();
  KahlerBackground bg = flat_background(grid);
  bg.mode = BackgroundMode::Perturbed;
  bg.potential = potential;
  bg.metric = HermitianField::identity(grid) + mixed_hessian(potential);

  DetMinEig dm = det_min_eig(bg.metric);
  bg.min_eig = *std::min_element(dm.min_eig.begin(), dm.min_eig.end());
  if (bg.min_eig < 0.1)
    throw Error(ErrorCode::NotPositive,
                "background metric min eigenvalue " + std::to_string(bg.min_eig) + " < 0.1");
  bg.det = ScalarField(grid, std::move(dm.det));
  bg.log_det = map(bg.det, [](double d) { return std::log(d); });
  bg.volume = integrate(bg.det);

  const CurvatureSamples curv = compute_curvature(bg);
  bg.inf_bisectional = curv.inf_bisectional;
  bg.bisectional_bound = curv.bisectional_bound;
  return bg;
}

}  // namespace cma
