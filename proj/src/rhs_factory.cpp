#include "cma/rhs_factory.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "cma/errors.hpp"
#include "cma/ma_operator.hpp"
#include "cma/quadrature.hpp"

namespace cma {
namespace {

void require(bool ok, const char* field, const std::string& why) {
  if (!ok) throw Error(ErrorCode::ValidationError, std::string(field) + ": " + why);
}

double bump(double t) { return t > 0.0 && t < 1.0 ? std::exp(-1.0 / std::sqrt(t * (1.0 - t))) : 0.0; }

// Running integral of the bump on a uniform table, read back by cubic
// Hermite interpolation with the exact bump as the slope.
class StepTable {
 public:
  static constexpr int kIntervals = 4096;

  StepTable() : cumulative_(kIntervals + 1, 0.0) {
    constexpr double nodes[5] = {0.0469100770306680, 0.2307653449471585, 0.5,
                                 0.7692346550528415, 0.9530899229693320};
    constexpr double weights[5] = {0.1184634425280945, 0.2393143352496832, 0.2844444444444444,
                                   0.2393143352496832, 0.1184634425280945};
    const double h = 1.0 / kIntervals;
    for (int i = 0; i < kIntervals; ++i) {
      double part = 0.0;
      for (int q = 0; q < 5; ++q) part += weights[q] * bump((i + nodes[q]) * h);
      cumulative_[i + 1] = cumulative_[i] + part * h;
    }
  }

  // Normalized integral from 0 to u; 0 for u <= 0 and 1 for u >= 1.
  double operator()(double u) const {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double h = 1.0 / kIntervals;
    const int i = std::min(static_cast<int>(u / h), kIntervals - 1);
    const double x = u / h - i;
    const double y0 = cumulative_[i], y1 = cumulative_[i + 1];
    const double d0 = bump(i * h) * h, d1 = bump((i + 1) * h) * h;
    const double x2 = x * x, x3 = x2 * x;
    const double v = (2 * x3 - 3 * x2 + 1) * y0 + (x3 - 2 * x2 + x) * d0 + (-2 * x3 + 3 * x2) * y1 +
                     (x3 - x2) * d1;
    return v / cumulative_[kIntervals];
  }

 private:
  std::vector<double> cumulative_;
};

// 1 on [0, 1/2], 0 on [1, inf), C-infinity in between: the normalized
// integral of exp(-1 / sqrt(u (1 - u))) with u = 2 - 2s.
double cutoff(double s) {
  static const StepTable step;
  return step(2.0 - 2.0 * s);
}

std::size_t spectrum_offset(const TorusGrid& grid, const std::array<int, TorusGrid::kMaxAxes>& k) {
  const int d = grid.axes();
  const int m = grid.m();
  std::size_t off = 0;
  for (int a = 0; a < d; ++a) {
    const int extent = grid.spectral_extent(a);
    const int idx = a == d - 1 ? k[a] : ((k[a] % m) + m) % m;
    off = off * extent + idx;
  }
  return off;
}

}  // namespace

const char* to_string(RhsKind kind) {
  switch (kind) {
    case RhsKind::Smooth: return "smooth";
    case RhsKind::Cusp: return "cusp";
    case RhsKind::Manufactured: return "manufactured";
  }
  return "unknown";
}

ScalarField trig_field(const GridPtr& grid, const std::vector<TrigTerm>& terms) {
  for (const TrigTerm& t : terms)
    require(t.axis >= 0 && t.axis < grid->axes(), "potential", "axis out of range");
  return ScalarField::sample(grid, [&](std::span<const double> x) {
    double v = 0.0;
    for (const TrigTerm& t : terms) {
      const double arg = 2.0 * M_PI * t.frequency * x[t.axis];
      v += t.amplitude * (t.sine ? std::sin(arg) : std::cos(arg));
    }
    return v;
  });
}

void RhsSpec::validate(int n) const {
  require(amplitude >= 0.0 && std::isfinite(amplitude), "amplitude", "must be finite and >= 0");
  require(p0 > 2.0 * n, "p0", "must satisfy p0 > 2n");
  if (kind == RhsKind::Smooth) require(bandwidth >= 1, "bandwidth", "must be at least 1");
  if (kind == RhsKind::Cusp) {
    if (!(beta > 0.05 && beta < 0.95))
      throw Error(ErrorCode::InvalidExponent, "beta: must lie in (0.05, 0.95)");
    require(cutoff_radius > 0.0 && cutoff_radius <= 0.5, "cutoff_radius", "must lie in (0, 0.5]");
    require(mollification >= 0.0, "mollification", "must be >= 0");
  }
}

ScalarField smooth_random_F(const RhsSpec& spec, const KahlerBackground& bg) {
  const GridPtr& grid = bg.grid;
  const int d = grid->axes();
  const int K = spec.bandwidth;
  require(2 * K < grid->m(), "bandwidth", "must stay below m/2");
  if (spec.amplitude == 0.0) return ScalarField(grid);

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss;
  std::vector<std::complex<double>> coeffs(grid->spectrum_size());

  // Lexicographic walk over [-K, K]^d; each mode pair (k, -k) is drawn once,
  // at the member whose first nonzero entry is positive.
  std::array<int, TorusGrid::kMaxAxes> k{};
  for (int a = 0; a < d; ++a) k[a] = -K;
  while (true) {
    int lead = 0;
    for (int a = 0; a < d && lead == 0; ++a) lead = k[a];
    if (lead > 0) {
      double k2 = 0.0;
      for (int a = 0; a < d; ++a) k2 += k[a] * k[a];
      const double scale = 1.0 / (1.0 + k2);
      const std::complex<double> c(scale * gauss(rng), scale * gauss(rng));
      std::array<int, TorusGrid::kMaxAxes> neg{};
      for (int a = 0; a < d; ++a) neg[a] = -k[a];
      if (k[d - 1] > 0) {
        coeffs[spectrum_offset(*grid, k)] += c;
      } else if (k[d - 1] < 0) {
        coeffs[spectrum_offset(*grid, neg)] += std::conj(c);
      } else {
        coeffs[spectrum_offset(*grid, k)] += c;
        coeffs[spectrum_offset(*grid, neg)] += std::conj(c);
      }
    }
    int a = d - 1;
    while (a >= 0 && k[a] == K) k[a--] = -K;
    if (a < 0) break;
    ++k[a];
  }

  std::vector<double> values(grid->size());
  grid->inverse(coeffs, values);
  ScalarField F(grid, std::move(values));
  const double sup = sup_norm(F);
  if (sup == 0.0) return ScalarField(grid);
  return normalize_F((spec.amplitude / sup) * F, bg);
}

ScalarField torus_distance(const GridPtr& grid,
                           const std::array<double, TorusGrid::kMaxAxes>& center) {
  return ScalarField::sample(grid, [&](std::span<const double> x) {
    double r2 = 0.0;
    for (std::size_t a = 0; a < x.size(); ++a) {
      double dx = x[a] - center[a];
      dx -= std::round(dx);
      r2 += dx * dx;
    }
    return std::sqrt(r2);
  });
}

ScalarField cusp_F(const RhsSpec& spec, const KahlerBackground& bg) {
  const GridPtr& grid = bg.grid;
  spec.validate(grid->n());
  if (spec.amplitude == 0.0) return ScalarField(grid);
  const double delta = spec.mollification > 0.0 ? spec.mollification : 2.0 * grid->spacing();
  require(delta >= grid->spacing() * (1.0 - 1e-12), "mollification", "must be at least h");
  const ScalarField rho = torus_distance(grid, spec.center);
  const ScalarField F = map(rho, [&](double r) {
    return spec.amplitude * cutoff(r / spec.cutoff_radius) *
           std::pow(r * r + delta * delta, 0.5 * spec.beta);
  });
  return normalize_F(F, bg);
}

ScalarField manufactured_F(const ScalarField& phi_star, const KahlerBackground& bg) {
  const PotentialState state = PotentialState::evaluate(phi_star, bg);
  if (!state.positive())
    throw Error(ErrorCode::NotPositive, "g + Hess(phi*) is not positive definite");
  const ScalarField F = map(state.det, [](double v) { return std::log(v); }) - bg.log_det;
  return normalize_F(F, bg);
}

RightHandSide generate_rhs(const RhsSpec& spec, const KahlerBackground& bg) {
  spec.validate(bg.grid->n());
  RightHandSide out{ScalarField(bg.grid), spec.kind, ScalarField(bg.grid), false};
  switch (spec.kind) {
    case RhsKind::Smooth:
      out.F = smooth_random_F(spec, bg);
      break;
    case RhsKind::Cusp:
      out.F = cusp_F(spec, bg);
      break;
    case RhsKind::Manufactured: {
      ScalarField phi = project_zero_mean(trig_field(bg.grid, spec.potential), bg);
      out.F = manufactured_F(phi, bg);
      out.exact_phi = std::move(phi);
      out.has_exact = true;
      break;
    }
  }
  return out;
}

double w1p_norm(const ScalarField& F, double p, const KahlerBackground& bg) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidExponent, "w1p_norm: p must be >= 1");
  const ScalarField grad = map(gradient_norm_sq(F, bg), [](double v) { return std::sqrt(std::max(v, 0.0)); });
  const double a = bg.flat() ? lp_norm(F, p) : lp_norm(F, p, bg.det);
  const double b = bg.flat() ? lp_norm(grad, p) : lp_norm(grad, p, bg.det);
  if (std::isinf(p)) return std::max(a, b);
  const double top = std::max(a, b);
  if (top == 0.0) return 0.0;
  return top * std::pow(std::pow(a / top, p) + std::pow(b / top, p), 1.0 / p);
}

}  // namespace cma
