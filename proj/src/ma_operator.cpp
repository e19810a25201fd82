#include "cma/ma_operator.hpp"

#include <algorithm>
#include <cmath>

#include "cma/errors.hpp"
#include "cma/quadrature.hpp"
#include "cma/spectral.hpp"

namespace cma {
namespace {

void require_positive(const PotentialState& state) {
  if (!state.positive())
    throw Error(ErrorCode::NotPositive, "g + phi_{i jbar} has min eigenvalue " +
                                            std::to_string(state.min_eig));
}

}  // namespace

PotentialState PotentialState::evaluate(const ScalarField& phi, const KahlerBackground& bg) {
  PotentialState s{phi, mixed_hessian(phi), HermitianField::zeros(bg.grid), ScalarField(bg.grid)};
  s.metric = bg.metric + s.hess;
  DetMinEig dm = det_min_eig(s.metric);
  s.min_eig = *std::min_element(dm.min_eig.begin(), dm.min_eig.end());
  s.det = ScalarField(bg.grid, std::move(dm.det));
  return s;
}

ScalarField residual(const PotentialState& state, const ScalarField& F,
                     const KahlerBackground& bg, double lambda) {
  require_positive(state);
  ScalarField out(bg.grid);
  auto r = out.mutable_values();
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = std::log(state.det[i]) - bg.log_det[i] - F[i] + lambda * state.phi[i];
  return out;
}

ScalarField linearized_apply(const PotentialState& state, const ScalarField& psi,
                             const KahlerBackground& bg, double lambda) {
  require_positive(state);
  (void)bg;
  ScalarField out = inverse_trace(state.metric, mixed_hessian(psi));
  if (lambda != 0.0) {
    auto v = out.mutable_values();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += lambda * psi[i];
  }
  return out;
}

ScalarField normalize_F(const ScalarField& F, const KahlerBackground& bg) {
  const double top = max_value(F);
  const ScalarField shifted = map(F, [top](double v) { return std::exp(v - top); });
  const double mass = integrate(shifted, bg.det);
  const double c = std::log(bg.volume / mass) - top;
  return F + c;
}

ScalarField project_zero_mean(const ScalarField& phi, const KahlerBackground& bg) {
  const double mean = integrate(phi, bg.det) / bg.volume;
  return phi + (-mean);
}

VolumeForm volume_form_phi(const PotentialState& state, const ScalarField& F,
                           const KahlerBackground& bg) {
  ScalarField weight(bg.grid);
  auto w = weight.mutable_values();
  double worst = 0.0;
  const bool can_check = state.positive();
  const ScalarField res = can_check ? residual(state, F, bg, 0.0) : ScalarField(bg.grid);
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = std::exp(F[i]) * bg.det[i];
    if (can_check)
      worst = std::max(worst, std::fabs(state.det[i] / bg.det[i] - std::exp(res[i] + F[i])));
  }
  return {std::move(weight), worst};
}

ScalarField laplacian(const ScalarField& f, const KahlerBackground& bg) {
  return inverse_trace(bg.metric, mixed_hessian(f));
}

ScalarField complex_gradient_sq(const ScalarField& f, const KahlerBackground& bg) {
  const ComplexGradient g = holomorphic_gradient(f);
  return contract_gradients(bg.metric, g, g);
}

ScalarField gradient_norm_sq(const ScalarField& f, const KahlerBackground& bg) {
  return 2.0 * complex_gradient_sq(f, bg);
}

}  // namespace cma
