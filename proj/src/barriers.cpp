#include "cma/barriers.hpp"

#include <algorithm>
#include <cmath>

#include "cma/errors.hpp"
#include "cma/quadrature.hpp"
#include "cma/spectral.hpp"

namespace cma {
namespace {

constexpr double kFitCap = 1e6;

void require_smooth(const ScalarField& F, std::optional<RhsKind> kind) {
  if (kind) {
    if (*kind == RhsKind::Cusp)
      throw Error(ErrorCode::RoughInput, "pointwise check skipped for cusp data");
    return;
  }
  if (spectral_tail_ratio(F) > 1e-8)
    throw Error(ErrorCode::RoughInput, "F is not band-limited below m/4");
}

ScalarField sqrt_field(const ScalarField& f) {
  return map(f, [](double v) { return std::sqrt(std::max(v, 0.0)); });
}

}  // namespace

DeltaBarrierConfig DeltaBarrierConfig::defaults(const KahlerBackground& bg) {
  return {bg.flat() ? 1.0 : 1.0 - bg.inf_bisectional + 0.1};
}

void DeltaBarrierConfig::validate(const KahlerBackground& bg) const {
  if (!(C1 + bg.inf_bisectional >= 0.1))
    throw Error(ErrorCode::ValidationError, "C1: C1 + inf bisectional curvature must be >= 0.1");
}

GradientBarrierConfig GradientBarrierConfig::for_state(const PotentialState& state,
                                                       const KahlerBackground& bg) {
  return {bg.bisectional_bound, 1.0 + sup_norm(state.phi)};
}

ScalarField delta_barrier(const PotentialState& state, const KahlerBackground& bg,
                          const DeltaBarrierConfig& cfg) {
  const ScalarField n_plus_lap = laplacian(state.phi, bg) + static_cast<double>(bg.grid->n());
  const ScalarField weight = map(state.phi, [&](double v) { return std::exp(-cfg.C1 * v); });
  return hadamard(weight, n_plus_lap);
}

ScalarField gradient_barrier(const PotentialState& state, const KahlerBackground& bg,
                             const GradientBarrierConfig& cfg) {
  const ScalarField weight = map(state.phi, [&](double v) { return std::exp(-cfg.A(v)); });
  return hadamard(weight, gradient_norm_sq(state.phi, bg) + 1.0);
}

bool a_prime_in_bracket(const PotentialState& state, const GradientBarrierConfig& cfg) {
  return std::all_of(state.phi.values().begin(), state.phi.values().end(), [&](double v) {
    const double a = cfg.A_prime(v);
    return a >= cfg.B + 1.0 && a <= cfg.B + 3.0;
  });
}

double spectral_tail_ratio(const ScalarField& F) {
  const Spectrum spec = Spectrum::of(F);
  const TorusGrid& grid = F.grid();
  const int d = grid.axes();
  const int cut = grid.m() / 4;
  double total = 0.0, tail = 0.0;
  std::array<int, TorusGrid::kMaxAxes> idx{};
  for (std::size_t s = 0; s < spec.coeffs.size(); ++s) {
    std::size_t rem = s;
    for (int a = d - 1; a >= 0; --a) {
      const int extent = grid.spectral_extent(a);
      idx[a] = static_cast<int>(rem % extent);
      rem /= extent;
    }
    int kmax = 0;
    for (int a = 0; a < d; ++a) kmax = std::max(kmax, std::abs(grid.frequency(a, idx[a])));
    if (kmax == 0) continue;
    const double e = std::norm(spec.coeffs[s]);
    total += e;
    if (kmax >= cut) tail += e;
  }
  return total == 0.0 ? 0.0 : tail / total;
}

LinearFit fit_lower_bound(std::span<const double> x, std::span<const double> z,
                          std::span<const double> d) {
  LinearFit fit;
  double b_min = 0.0;
  for (std::size_t p = 0; p < d.size(); ++p) b_min = std::max(b_min, -d[p] / z[p]);
  const double budget = b_min > 0.0 ? 2.0 * b_min : 1.0;

  fit.a = kFitCap;
  for (std::size_t p = 0; p < d.size(); ++p)
    if (x[p] > 0.0) fit.a = std::min(fit.a, (d[p] + budget * z[p]) / x[p]);

  fit.b = 0.0;
  for (std::size_t p = 0; p < d.size(); ++p)
    fit.b = std::max(fit.b, (fit.a * x[p] - d[p]) / z[p]);

  fit.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < d.size(); ++p)
    fit.worst_margin = std::min(fit.worst_margin, d[p] - fit.a * x[p] + fit.b * z[p]);
  return fit;
}

YauFit check_yau_inequality(const PotentialState& state, const ScalarField& F,
                            const KahlerBackground& bg, const DeltaBarrierConfig& cfg,
                            std::optional<RhsKind> kind) {
  const int n = bg.grid->n();
  if (n < 2) throw Error(ErrorCode::InvalidDimension, "the Yau inequality needs n >= 2");
  cfg.validate(bg);
  require_smooth(F, kind);

  const double expo = static_cast<double>(n) / (n - 1);
  const double inf_r = bg.inf_bisectional;
  const ScalarField u = delta_barrier(state, bg, cfg);
  const ScalarField lap_u = linearized_apply(state, u, bg, 0.0);
  const ScalarField n_plus_lap = laplacian(state.phi, bg) + static_cast<double>(n);
  const ScalarField lap_F = laplacian(F, bg);

  const std::size_t size = bg.grid->size();
  std::vector<double> x(size), z(size, 1.0), d(size);
  double yau_margin = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < size; ++p) {
    const double s = n_plus_lap[p];
    const double e = std::exp(-cfg.C1 * state.phi[p]);
    x[p] = std::pow(std::max(s, 0.0), expo);
    d[p] = lap_u[p] - e * lap_F[p];
    const double rhs = e * (lap_F[p] - n * n * inf_r - cfg.C1 * n * s) +
                       std::exp(-cfg.C1 * state.phi[p] - F[p] / (n - 1)) * (cfg.C1 + inf_r) * x[p];
    yau_margin = std::min(yau_margin, lap_u[p] - rhs);
  }
  const LinearFit fit = fit_lower_bound(x, z, d);
  return {fit.a, fit.b, fit.worst_margin, yau_margin};
}

GradientFit check_gradient_differential_inequality(const PotentialState& state,
                                                   const ScalarField& F,
                                                   const KahlerBackground& bg,
                                                   std::optional<RhsKind> kind) {
  require_smooth(F, kind);
  const int n = bg.grid->n();
  const GradientBarrierConfig cfg = GradientBarrierConfig::for_state(state, bg);
  const ScalarField u = gradient_barrier(state, bg, cfg);
  const ScalarField lap_u = linearized_apply(state, u, bg, 0.0);
  const ScalarField grad_phi_sq = gradient_norm_sq(state.phi, bg);
  const ScalarField grad_phi = sqrt_field(grad_phi_sq);
  const ScalarField grad_F = sqrt_field(gradient_norm_sq(F, bg));
  const ScalarField n_plus_lap = laplacian(state.phi, bg) + static_cast<double>(n);

  const std::size_t size = bg.grid->size();
  std::vector<double> x(size), z(size), d(size);
  for (std::size_t p = 0; p < size; ++p) {
    x[p] = std::pow(grad_phi_sq[p], 1.0 + 1.0 / n);
    z[p] = grad_F[p] * grad_phi[p] + 1.0;
    d[p] = lap_u[p] - std::exp(-cfg.A(state.phi[p])) * n_plus_lap[p];
  }
  const LinearFit fit = fit_lower_bound(x, z, d);
  return {fit.a, fit.b, fit.worst_margin};
}

}  // namespace cma
