#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

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

ScalarField cos_x1(const GridPtr& grid, double amp = 1.0) {
  return trig_field(grid, {{amp, false, 0, 1}});
}

}  // namespace

TEST_SUITE("ma_operator") {

TEST_CASE("residual oracles") {
  auto grid = make_grid(2, 8);
  const KahlerBackground bg = flat_background(grid);
  const PotentialState zero = PotentialState::evaluate(ScalarField(grid), bg);
  CHECK(zero.min_eig == doctest::Approx(1.0));
  CHECK(sup_norm(residual(zero, ScalarField(grid), bg, 0.0)) == 0.0);
  const ScalarField r = residual(zero, ScalarField::constant(grid, 0.7), bg, 0.0);
  CHECK(max_value(r) == doctest::Approx(-0.7));
  CHECK(min_value(r) == doctest::Approx(-0.7));
  // lambda phi enters with a plus sign.
  const PotentialState c = PotentialState::evaluate(ScalarField::constant(grid, 2.0), bg);
  CHECK(max_value(residual(c, ScalarField(grid), bg, 1.0)) == doctest::Approx(2.0));
}

TEST_CASE("n = 1 equation is linear in phi_{1 1bar}") {
  auto grid = make_grid(1, 32);
  const KahlerBackground bg = flat_background(grid);
  const ScalarField F = normalize_F(trig_field(grid, {{0.3, false, 0, 1}, {0.2, true, 1, 2}}), bg);
  const ScalarField rhs = map(F, [](double v) { return std::exp(v) - 1.0; });
  const ScalarField phi = flat_inverse(rhs, 0.0);
  const PotentialState s = PotentialState::evaluate(phi, bg);
  // e^F - 1 is not band-limited, so the identity holds to aliasing level.
  CHECK(sup_norm(residual(s, F, bg, 0.0)) < 1e-10);
}

TEST_CASE("non-positive metric") {
  auto grid = make_grid(1, 16);
  const KahlerBackground bg = flat_background(grid);
  const PotentialState s = PotentialState::evaluate(cos_x1(grid, 0.2), bg);
  CHECK(s.min_eig == doctest::Approx(1.0 - 0.2 * kPi * kPi));
  CHECK_FALSE(s.positive());
  CHECK_THROWS_AS(residual(s, ScalarField(grid), bg, 0.0), Error);
}

TEST_CASE("linearized operator") {
  auto grid = make_grid(1, 16);
  const KahlerBackground bg = flat_background(grid);
  const PotentialState zero = PotentialState::evaluate(ScalarField(grid), bg);
  const ScalarField psi = trig_field(grid, {{1.0, false, 0, 1}, {0.5, true, 1, 3}});
  CHECK(max_diff(linearized_apply(zero, psi, bg, 0.0), 0.25 * real_laplacian(psi)) < 1e-11);
  const ScalarField c = ScalarField::constant(grid, 3.0);
  CHECK(max_diff(linearized_apply(zero, c, bg, 1.0), c) < 1e-12);
  CHECK(sup_norm(linearized_apply(zero, c, bg, 0.0)) < 1e-12);
}

TEST_CASE("linearization is the derivative of the residual") {
  auto grid = make_grid(2, 8);
  const KahlerBackground bg =
      perturbed_background(trig_field(grid, {{0.02, false, 0, 1}, {0.02, true, 3, 1}}));
  const ScalarField phi = trig_field(grid, {{0.03, true, 1, 1}, {0.02, false, 2, 2}});
  const ScalarField psi = trig_field(grid, {{1.0, false, 0, 2}, {0.5, true, 3, 1}});
  const ScalarField F = ScalarField(grid);
  const PotentialState s = PotentialState::evaluate(phi, bg);
  for (double lambda : {0.0, 1.0, -1.0}) {
    const ScalarField r0 = residual(s, F, bg, lambda);
    const ScalarField lin = linearized_apply(s, psi, bg, lambda);
    double err[2];
    const double ts[2] = {1e-4, 1e-5};
    for (int i = 0; i < 2; ++i) {
      const PotentialState st = PotentialState::evaluate(phi + ts[i] * psi, bg);
      err[i] = sup_norm((1.0 / ts[i]) * (residual(st, F, bg, lambda) - r0) - lin);
    }
    const double ratio = err[0] / err[1];
    CHECK(ratio > 5.0);
    CHECK(ratio < 20.0);
  }
}

TEST_CASE("normalize_F") {
  auto grid = make_grid(1, 64);
  const KahlerBackground bg = flat_background(grid);
  CHECK(sup_norm(normalize_F(ScalarField::constant(grid, 5.0), bg)) < 1e-14);
  const ScalarField F = cos_x1(grid);
  const ScalarField n1 = normalize_F(F, bg);
  const double I0 = 1.2660658777520082;  // modified Bessel I_0(1)
  CHECK(n1[0] - F[0] == doctest::Approx(-std::log(I0)).epsilon(1e-13));
  CHECK(max_diff(normalize_F(n1, bg), n1) < 1e-12);
  CHECK(integrate(map(n1, [](double v) { return std::exp(v); })) == doctest::Approx(1.0));
}

TEST_CASE("project_zero_mean") {
  auto grid = make_grid(2, 8);
  const KahlerBackground bg =
      perturbed_background(trig_field(grid, {{0.03, false, 1, 1}}));
  CHECK(sup_norm(project_zero_mean(ScalarField::constant(grid, 7.0), bg)) < 1e-14);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> normal;
  std::vector<double> v(grid->size());
  for (double& x : v) x = normal(rng);
  const ScalarField p = project_zero_mean(ScalarField(grid, v), bg);
  CHECK(std::fabs(integrate(p, bg.det)) < 1e-14);
  CHECK(max_diff(project_zero_mean(p, bg), p) < 1e-15);
}

TEST_CASE("volume form") {
  auto grid = make_grid(1, 32);
  const KahlerBackground bg = flat_background(grid);
  const PotentialState zero = PotentialState::evaluate(ScalarField(grid), bg);
  const VolumeForm unit = volume_form_phi(zero, ScalarField(grid), bg);
  CHECK(max_value(unit.weight) == doctest::Approx(1.0));
  CHECK(min_value(unit.weight) == doctest::Approx(1.0));
  const ScalarField F = normalize_F(cos_x1(grid, 0.4), bg);
  CHECK(integrate(volume_form_phi(zero, F, bg).weight) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("gradient conventions and integration by parts") {
  auto grid = make_grid(1, 32);
  const KahlerBackground bg = flat_background(grid);
  const ScalarField f = cos_x1(grid);
  // |f_z|^2 = pi^2 sin^2, and |grad f|^2 is twice that.
  CHECK(integrate(complex_gradient_sq(f, bg)) == doctest::Approx(kPi * kPi / 2));
  CHECK(integrate(gradient_norm_sq(f, bg)) == doctest::Approx(kPi * kPi));

  auto grid2 = make_grid(2, 12);
  const KahlerBackground pb =
      perturbed_background(trig_field(grid2, {{0.02, false, 0, 1}, {0.02, true, 3, 1}}));
  const ScalarField phi = trig_field(grid2, {{0.5, true, 1, 1}, {0.3, false, 2, 2}});
  const double lhs = integrate(complex_gradient_sq(phi, pb), pb.det);
  const double rhs = -integrate(hadamard(phi, laplacian(phi, pb)), pb.det);
  CHECK(std::fabs(lhs - rhs) < 1e-9 * std::max(1.0, lhs));
}

}  // TEST_SUITE
