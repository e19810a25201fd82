#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "cma/errors.hpp"
#include "cma/kahler_background.hpp"
#include "cma/ma_operator.hpp"
#include "cma/quadrature.hpp"
#include "cma/rhs_factory.hpp"
#include "cma/spectral.hpp"

using namespace cma;

namespace {

constexpr double kPi = std::numbers::pi;

double max_diff(const ScalarField& a, const ScalarField& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
  return d;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::IoError;
}

// Spectral energy in modes with some |k_a| >= K.
double energy_from(const ScalarField& f, int K) {
  const Spectrum s = Spectrum::of(f);
  const TorusGrid& g = f.grid();
  double e = 0.0;
  std::size_t flat = 0;
  std::array<int, TorusGrid::kMaxAxes> idx{};
  for (; flat < s.coeffs.size(); ++flat) {
    int top = 0;
    for (int a = 0; a < g.axes(); ++a) top = std::max(top, std::abs(g.frequency(a, idx[a])));
    if (top >= K) e += std::norm(s.coeffs[flat]);
    for (int a = g.axes() - 1; a >= 0; --a) {
      if (++idx[a] < g.spectral_extent(a)) break;
      idx[a] = 0;
    }
  }
  return e;
}

}  // namespace

TEST_SUITE("rhs_factory") {

TEST_CASE("smooth random fields") {
  auto grid = make_grid(2, 12);
  const KahlerBackground bg = flat_background(grid);
  RhsSpec spec;
  spec.seed = 42;
  spec.amplitude = 0.0;
  CHECK(sup_norm(smooth_random_F(spec, bg)) == 0.0);
  spec.amplitude = 0.5;
  const ScalarField a = smooth_random_F(spec, bg);
  const ScalarField b = smooth_random_F(spec, bg);
  CHECK(max_diff(a, b) == 0.0);
  spec.seed = 43;
  CHECK(max_diff(a, smooth_random_F(spec, bg)) > 1e-3);
  // Normalization only shifts by a constant, so the oscillation is 2A at most.
  CHECK(max_value(a) - min_value(a) <= 2 * 0.5 + 1e-12);
  CHECK(integrate(map(a, [](double v) { return std::exp(v); })) == doctest::Approx(1.0));
  // Band limit: nothing above the requested bandwidth.
  spec.bandwidth = 2;
  const ScalarField narrow = smooth_random_F(spec, bg);
  CHECK(energy_from(narrow, 3) < 1e-24 * energy_from(narrow, 1));
}

TEST_CASE("cusp family") {
  auto grid = make_grid(2, 16);
  const KahlerBackground bg = flat_background(grid);
  RhsSpec spec;
  spec.kind = RhsKind::Cusp;
  spec.center = {0.5, 0.5, 0.5, 0.5};
  spec.amplitude = 0.0;
  CHECK(sup_norm(cusp_F(spec, bg)) == 0.0);
  spec.amplitude = 1.0;
  const ScalarField F = cusp_F(spec, bg);
  const ScalarField rho = torus_distance(grid, spec.center);
  // Constant outside the cutoff radius, maximal away from the center.
  double outside = std::nan("");
  for (std::size_t p = 0; p < F.size(); ++p)
    if (rho[p] >= spec.cutoff_radius) {
      if (std::isnan(outside)) outside = F[p];
      CHECK(F[p] == doctest::Approx(outside));
    }
  CHECK(rho[8 * 16 * 16 * 16 + 8 * 16 * 16 + 8 * 16 + 8] == 0.0);

  spec.beta = 0.99;
  CHECK(code_of([&] { cusp_F(spec, bg); }) == ErrorCode::InvalidExponent);
  spec.beta = 0.6;
  spec.mollification = 0.5 / 16;
  CHECK(code_of([&] { cusp_F(spec, bg); }) == ErrorCode::ValidationError);
  spec.mollification = 0.0;
  spec.p0 = 4.0;
  CHECK(code_of([&] { cusp_F(spec, bg); }) == ErrorCode::ValidationError);
}

TEST_CASE("torus distance wraps") {
  auto grid = make_grid(1, 8);
  const ScalarField d = torus_distance(grid, {0.0, 0.0, 0.0, 0.0});
  CHECK(d[0] == 0.0);
  CHECK(d[7] == doctest::Approx(1.0 / 8));        // y = 7/8 wraps to 1/8
  CHECK(d[4 * 8 + 4] == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("manufactured data") {
  auto grid = make_grid(1, 64);
  const KahlerBackground bg = flat_background(grid);
  CHECK(sup_norm(manufactured_F(ScalarField(grid), bg)) == 0.0);
  const double a = 0.05;
  const ScalarField phi = trig_field(grid, {{a, false, 0, 1}});
  const ScalarField F = manufactured_F(phi, bg);
  // n = 1: det = 1 - a pi^2 cos(2 pi x), already of unit mass.
  const ScalarField expect = ScalarField::sample(grid, [&](std::span<const double> x) {
    return std::log(1.0 - a * kPi * kPi * std::cos(2 * kPi * x[0]));
  });
  CHECK(max_diff(F, expect) < 1e-12);
  CHECK(code_of([&] { manufactured_F(trig_field(grid, {{0.2, false, 0, 1}}), bg); }) ==
        ErrorCode::NotPositive);

  RhsSpec spec;
  spec.kind = RhsKind::Manufactured;
  spec.potential = {{a, false, 0, 1}};
  const RightHandSide rhs = generate_rhs(spec, bg);
  CHECK(rhs.has_exact);
  CHECK(rhs.kind == RhsKind::Manufactured);
  CHECK(std::fabs(integrate(rhs.exact_phi)) < 1e-15);
}

TEST_CASE("trig field") {
  auto grid = make_grid(1, 8);
  CHECK(code_of([&] { trig_field(grid, {{1.0, false, 2, 1}}); }) == ErrorCode::ValidationError);
  const ScalarField s = trig_field(grid, {{2.0, true, 1, 1}});
  CHECK(s[2] == doctest::Approx(2.0));  // y = 1/4
}

TEST_CASE("W^{1,p} norm") {
  auto grid = make_grid(1, 64);
  const KahlerBackground bg = flat_background(grid);
  CHECK(w1p_norm(ScalarField(grid), 8.0, bg) == 0.0);
  CHECK(w1p_norm(ScalarField::constant(grid, 3.0), 5.0, bg) == doctest::Approx(3.0));
  const ScalarField f = trig_field(grid, {{1.0, false, 0, 1}});
  // ||cos||_2^2 = 1/2, || |grad| ||_2^2 = int 2 pi^2 sin^2 = pi^2.
  CHECK(w1p_norm(f, 2.0, bg) == doctest::Approx(std::sqrt(0.5 + kPi * kPi)));
  CHECK(w1p_norm(2.0 * f, 8.0, bg) == doctest::Approx(2.0 * w1p_norm(f, 8.0, bg)));
  CHECK(code_of([&] { w1p_norm(f, 0.5, bg); }) == ErrorCode::InvalidExponent);
}

}  // TEST_SUITE
