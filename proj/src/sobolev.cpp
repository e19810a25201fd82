#include "cma/sobolev.hpp"

#include <cmath>
#include <random>

#include "cma/errors.hpp"
#include "cma/ma_operator.hpp"
#include "cma/quadrature.hpp"
#include "cma/rhs_factory.hpp"

namespace cma {

const char* to_string(SobolevVariant v) {
  return v == SobolevVariant::TwoNorm ? "two-norm" : "one-norm";
}

double sobolev_ratio(const ScalarField& f, const KahlerBackground& bg, SobolevVariant variant) {
  const int n = bg.grid->n();
  const ScalarField grad_sq = gradient_norm_sq(f, bg);
  auto integral = [&](const ScalarField& g) {
    return bg.flat() ? integrate(g) : integrate(g, bg.det);
  };
  auto norm = [&](const ScalarField& g, double p) {
    return bg.flat() ? lp_norm(g, p) : lp_norm(g, p, bg.det);
  };
  if (variant == SobolevVariant::TwoNorm) {
    const double q = 2.0 * n / (n - 1.0);
    const double num = std::pow(norm(f, q), 2.0);
    return num / (integral(grad_sq) + std::pow(norm(f, 2.0), 2.0));
  }
  const double q = 2.0 * n / (2.0 * n - 1.0);
  const ScalarField grad = map(grad_sq, [](double v) { return std::sqrt(std::max(v, 0.0)); });
  return norm(f, q) / (integral(grad) + norm(f, 1.0));
}

SobolevProbe sobolev_probe(const KahlerBackground& bg, SobolevVariant variant, int trials,
                           std::uint64_t seed) {
  if (trials < 100) throw Error(ErrorCode::ValidationError, "trials: must be at least 100");
  if (variant == SobolevVariant::TwoNorm && bg.grid->n() < 2)
    throw Error(ErrorCode::InvalidDimension, "two-norm Sobolev inequality needs n >= 2");

  SobolevProbe probe{variant, trials, 0.0, ""};
  auto consider = [&](const ScalarField& f, const char* cls) {
    const double r = sobolev_ratio(f, bg, variant);
    if (r > probe.lower_bound) {
      probe.lower_bound = r;
      probe.best_class = cls;
    }
  };

  consider(ScalarField::constant(bg.grid, 1.0), "constant");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 1; t < trials; ++t) {
    if (t % 4 == 0) {
      std::array<double, TorusGrid::kMaxAxes> center{};
      for (double& c : center) c = unit(rng);
      const double sigma = 0.08 + 0.04 * unit(rng);
      const ScalarField rho = torus_distance(bg.grid, center);
      consider(map(rho, [&](double r) { return std::exp(-r * r / (2.0 * sigma * sigma)); }), "bump");
    } else {
      RhsSpec spec;
      spec.kind = RhsKind::Smooth;
      spec.bandwidth = 3;
      spec.amplitude = 1.0;
      spec.seed = rng();
      consider(smooth_random_F(spec, bg), "random");
    }
  }
  return probe;
}

}  // namespace cma
