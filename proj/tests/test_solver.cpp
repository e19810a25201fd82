#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "cma/continuation_solver.hpp"
#include "cma/errors.hpp"
#include "cma/linear_solver.hpp"
#include "cma/quadrature.hpp"
#include "cma/rhs_factory.hpp"
#include "cma/spectral.hpp"
#include "oracles.hpp"

using namespace cma;

namespace {

constexpr double kPi = std::numbers::pi;

double max_diff(const ScalarField& a, const ScalarField& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST_SUITE("continuation_solver") {

TEST_CASE("config validation") {
  SolveConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.damping_min_eig = 0.1;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = SolveConfig{};
  cfg.newton_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = SolveConfig{};
  cfg.continuation_steps = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("linear solve Fourier-mode oracle") {
  auto grid = make_grid(1, 16);
  const KahlerBackground bg = flat_background(grid);
  const PotentialState zero = PotentialState::evaluate(ScalarField(grid), bg);
  const ScalarField rhs = trig_field(grid, {{1.0, false, 0, 1}});
  const LinearSolveResult r = linear_solve(zero, rhs, bg, 0.0, GmresOptions{});
  CHECK(max_diff(r.solution, (-1.0 / (kPi * kPi)) * rhs) < 1e-12);
  CHECK(std::fabs(r.constant) < 1e-14);
  const LinearSolveResult z = linear_solve(zero, ScalarField(grid), bg, 0.0, GmresOptions{});
  CHECK(sup_norm(z.solution) == 0.0);
  CHECK(z.iterations == 0);
}

TEST_CASE("linear solve on a deformed metric") {
  auto grid = make_grid(2, 8);
  const KahlerBackground bg = flat_background(grid);
  const PotentialState s =
      PotentialState::evaluate(trig_field(grid, {{0.03, false, 0, 1}, {0.02, true, 3, 1}}), bg);
  const ScalarField rhs = trig_field(grid, {{1.0, true, 1, 1}, {0.4, false, 2, 2}});
  for (double lambda : {0.0, 1.0, -1.0}) {
    const LinearSolveResult r = linear_solve(s, rhs, bg, lambda, GmresOptions{});
    const ScalarField back = linearized_apply(s, r.solution, bg, lambda) + r.constant;
    CHECK(max_diff(back, rhs) < 1e-7);
    if (lambda != 0.0) CHECK(r.constant == 0.0);
  }
}

TEST_CASE("F = 0 needs no Newton steps") {
  auto grid = make_grid(1, 16);
  const KahlerBackground bg = flat_background(grid);
  const SolveResult r = solve(ScalarField(grid), bg, 0.0, SolveConfig{});
  CHECK(r.report.newton_steps == 0);
  CHECK(sup_norm(r.state.phi) == 0.0);
  CHECK(r.report.final_residual == 0.0);
}

TEST_CASE("Newton step at the exact solution") {
  auto grid = make_grid(1, 32);
  const KahlerBackground bg = flat_background(grid);
  const ScalarField phi = trig_field(grid, {{0.02, false, 0, 1}, {0.01, true, 1, 2}});
  const PotentialState s = PotentialState::evaluate(phi, bg);
  const ScalarField F = map(s.det, [](double d) { return std::log(d); });
  auto [next, diag] = newton_step(s, F, bg, 0.0, SolveConfig{});
  CHECK(diag.halvings == 0);
  CHECK(diag.damping == 1.0);
  CHECK(max_diff(next.phi, phi) < 1e-13);
}

TEST_CASE("n = 1 solution matches the direct DFT oracle") {
  const int m = 32;
  auto grid = make_grid(1, m);
  const KahlerBackground bg = flat_background(grid);
  RhsSpec spec;
  spec.seed = 17;
  spec.amplitude = 0.5;
  spec.bandwidth = 6;
  const ScalarField F = smooth_random_F(spec, bg);
  const SolveResult r = solve(F, bg, 0.0, SolveConfig{});
  CHECK(r.report.final_residual <= 1e-10);

  double mean = 0.0;
  for (double v : F.values()) mean += std::exp(v);
  mean /= static_cast<double>(F.size());
  std::vector<double> g(F.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::exp(F[i]) / mean - 1.0;
  const ScalarField exact(grid, cma::testing::poisson_oracle(g, m));
  CHECK(max_diff(r.state.phi, exact) < 1e-10);
  CHECK(std::fabs(r.report.discrete_shift) < 1e-12);
}

TEST_CASE("convergence history is quadratic near the solution") {
  auto grid = make_grid(1, 64);
  const KahlerBackground bg = flat_background(grid);
  RhsSpec spec;
  spec.seed = 3;
  const ScalarField F = smooth_random_F(spec, bg);
  SolveConfig cfg;
  cfg.continuation_steps = 1;
  cfg.newton_tol = 1e-12;
  const SolveResult r = solve(F, bg, 0.0, cfg);
  const auto& res = r.report.stages.back().residuals;
  REQUIRE(res.size() >= 3);
  // Final-stage residuals are monotone.
  for (std::size_t i = 1; i < res.size(); ++i) CHECK(res[i] < res[i - 1]);
  CHECK(r.report.final_residual <= 1e-12);
}

TEST_CASE("lambda = +1 and -1 equations") {
  auto grid = make_grid(2, 8);
  const KahlerBackground bg = flat_background(grid);
  const ScalarField F = trig_field(grid, {{0.2, false, 0, 1}, {0.1, true, 2, 1}});
  for (double lambda : {1.0, -1.0}) {
    const SolveResult r = solve(F, bg, lambda, SolveConfig{});
    CHECK(r.report.final_residual <= 1e-10);
    CHECK(sup_norm(residual(r.state, r.F, bg, lambda)) <= 1e-10);
    CHECK(r.report.discrete_shift == 0.0);
  }
}

TEST_CASE("positivity loss is reported") {
  auto grid = make_grid(1, 16);
  const KahlerBackground bg = flat_background(grid);
  const ScalarField F = trig_field(grid, {{3.0, false, 0, 1}});
  SolveConfig cfg;
  cfg.continuation_steps = 1;
  cfg.max_halvings = 0;
  cfg.damping_min_eig = 0.09;
  try {
    solve(F, bg, 0.0, cfg);
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK((e.code() == ErrorCode::PositivityLost || e.code() == ErrorCode::ContinuationStalled));
  }
}

TEST_CASE("W^{3,p} seminorm oracle") {
  auto grid = make_grid(1, 64);
  const KahlerBackground bg = flat_background(grid);
  const PotentialState zero = PotentialState::evaluate(ScalarField(grid), bg);
  CHECK(w3p_seminorm(zero, 8.0, bg) == 0.0);
  const ScalarField phi = trig_field(grid, {{0.05, false, 0, 1}});
  const PotentialState s = PotentialState::evaluate(phi, bg);
  // |phi_{1 1bar 1}| = 0.05 pi^3 |sin 2 pi x|, and int sin^8 = 35/128.
  const double expect = 0.05 * std::pow(kPi, 3) * std::pow(35.0 / 128.0, 1.0 / 8.0);
  CHECK(w3p_seminorm(s, 8.0, bg) == doctest::Approx(expect).epsilon(1e-12));
  const PotentialState s2 = PotentialState::evaluate(2.0 * phi, bg);
  CHECK(w3p_seminorm(s2, 8.0, bg) == doctest::Approx(2 * expect).epsilon(1e-12));
}

}  // TEST_SUITE
