#include "cma/continuation_solver.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "cma/errors.hpp"
#include "cma/quadrature.hpp"
#include "cma/spectral.hpp"

namespace cma {
namespace {

void require(bool ok, const char* field, const std::string& why) {
  if (!ok) throw Error(ErrorCode::ValidationError, std::string(field) + ": " + why);
}

// Residuals this small are at the rounding floor of log det; a step that
// does not reduce them further is still acceptable.
double roundoff_floor(const ScalarField& F) {
  return 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + sup_norm(F));
}

bool stage_done(double res, double tol, const ScalarField& F) {
  return res <= tol || res <= roundoff_floor(F);
}

}  // namespace

void SolveConfig::validate() const {
  require(continuation_steps >= 1, "continuation_steps", "must be at least 1");
  require(newton_tol > 0.0, "newton_tol", "must be positive");
  require(max_newton >= 1, "max_newton", "must be at least 1");
  require(linear_tol > 0.0, "linear_tol", "must be positive");
  require(damping_min_eig > 0.0 && damping_min_eig < 0.1, "damping_min_eig",
          "must lie in (0, 0.1)");
  require(max_halvings >= 0, "max_halvings", "must be nonnegative");
  require(p0 >= 1.0, "p0", "must be at least 1");
}

std::pair<PotentialState, StepDiagnostics> newton_step(const PotentialState& state,
                                                       const ScalarField& F,
                                                       const KahlerBackground& bg,
                                                       double lambda, const SolveConfig& cfg) {
  StepDiagnostics diag;
  const ScalarField r = residual(state, F, bg, lambda);
  diag.residual_before = sup_norm(r);

  GmresOptions opts;
  opts.relative_tol = cfg.linear_tol;
  LinearSolveResult lin = linear_solve(state, -1.0 * r, bg, lambda, opts);
  diag.linear_iterations = lin.iterations;
  const ScalarField& delta = lin.solution;
  const double ds = -lin.constant;

  if (sup_norm(delta) == 0.0 && ds == 0.0) {
    diag.residual_after = diag.residual_before;
    diag.min_eig = state.min_eig;
    return {state, diag};
  }

  const double floor = roundoff_floor(F);
  bool positivity_failed = false;
  double t = 1.0;
  for (int h = 0; h <= cfg.max_halvings; ++h, t *= 0.5) {
    ScalarField trial = state.phi + t * delta;
    if (lambda == 0.0) trial = project_zero_mean(trial, bg);
    PotentialState next = PotentialState::evaluate(trial, bg);
    if (next.min_eig < cfg.damping_min_eig) {
      positivity_failed = true;
      continue;
    }
    positivity_failed = false;
    const double after = sup_norm(residual(next, F + t * ds, bg, lambda));
    if (after < diag.residual_before || after <= floor) {
      diag.damping = t;
      diag.shift = t * ds;
      diag.halvings = h;
      diag.residual_after = after;
      diag.min_eig = next.min_eig;
      return {std::move(next), diag};
    }
  }
  if (positivity_failed)
    throw Error(ErrorCode::PositivityLost,
                "line search could not keep the smallest eigenvalue above " +
                    std::to_string(cfg.damping_min_eig));
  throw Error(ErrorCode::ContinuationStalled, "line search found no residual decrease");
}

std::pair<PotentialState, StageHistory> solve_stage(const PotentialState& start,
                                                    const ScalarField& F,
                                                    const KahlerBackground& bg, double lambda,
                                                    const SolveConfig& cfg, double tol) {
  StageHistory hist;
  PotentialState state = start;
  ScalarField Fs = F;
  double res = sup_norm(residual(state, Fs, bg, lambda));
  hist.residuals.push_back(res);
  for (int it = 0; !stage_done(res, tol, F); ++it) {
    if (it >= cfg.max_newton)
      throw Error(ErrorCode::ContinuationStalled,
                  "stage exhausted " + std::to_string(cfg.max_newton) +
                      " Newton steps at residual " + std::to_string(res));
    auto [next, diag] = newton_step(state, Fs, bg, lambda, cfg);
    if (diag.residual_after >= res && res > roundoff_floor(F))
      throw Error(ErrorCode::ContinuationStalled, "Newton step made no progress");
    state = std::move(next);
    Fs = Fs + diag.shift;
    hist.shift += diag.shift;
    res = diag.residual_after;
    hist.residuals.push_back(res);
    hist.damping.push_back(diag.damping);
    hist.linear_iterations.push_back(diag.linear_iterations);
  }
  return {std::move(state), std::move(hist)};
}

namespace {

SolveResult run_schedule(const ScalarField& F, const KahlerBackground& bg, double lambda,
                         const SolveConfig& cfg, int steps) {
  SolveResult out{PotentialState::evaluate(ScalarField(bg.grid), bg), {}, normalize_F(F, bg)};
  out.report.continuation_steps_used = steps;
  const double stage_tol = std::max(cfg.newton_tol, 1e-6);
  for (int k = 1; k <= steps; ++k) {
    const double t = static_cast<double>(k) / steps;
    const ScalarField Ft = k == steps ? out.F : normalize_F(t * F, bg);
    auto [state, hist] =
        solve_stage(out.state, Ft, bg, lambda, cfg, k == steps ? cfg.newton_tol : stage_tol);
    hist.t = t;
    const double stage_shift = hist.shift;
    out.report.newton_steps += static_cast<int>(hist.damping.size());
    out.report.stages.push_back(std::move(hist));
    out.state = std::move(state);
    if (k == steps) {
      out.F = out.F + stage_shift;
      out.report.discrete_shift = stage_shift;
    }
  }
  return out;
}

}  // namespace

SolveResult solve(const ScalarField& F, const KahlerBackground& bg, double lambda,
                  const SolveConfig& cfg) {
  cfg.validate();
  if (!F.all_finite()) throw Error(ErrorCode::ValidationError, "F: non-finite values");
  const auto begin = std::chrono::steady_clock::now();

  SolveResult out = [&] {
    try {
      return run_schedule(F, bg, lambda, cfg, cfg.continuation_steps);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ContinuationStalled) throw;
    }
    SolveResult retry = run_schedule(F, bg, lambda, cfg, 2 * cfg.continuation_steps);
    retry.report.retried = true;
    return retry;
  }();

  SolveReport& rep = out.report;
  const PotentialState& s = out.state;
  const int n = bg.grid->n();
  rep.final_min_eig = s.min_eig;
  rep.final_residual = sup_norm(residual(s, out.F, bg, lambda));
  rep.sup_phi = sup_norm(s.phi);
  rep.sup_grad_phi = std::sqrt(max_value(gradient_norm_sq(s.phi, bg)));
  const ScalarField n_plus_lap = laplacian(s.phi, bg) + static_cast<double>(n);
  rep.sup_n_plus_lap = max_value(n_plus_lap);
  rep.min_n_plus_lap = min_value(n_plus_lap);
  rep.p0 = cfg.p0;
  rep.w3p = w3p_seminorm(s, cfg.p0, bg);
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
  return out;
}

double w3p_seminorm(const PotentialState& state, double p0, const KahlerBackground& bg) {
  const GridPtr& grid = bg.grid;
  const int n = grid->n();
  const Spectrum spec = Spectrum::of(state.phi);
  std::vector<double> sq(grid->size(), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Wirtinger factors[3] = {{i, false}, {j, true}, {k, false}};
        auto [re, im] = apply_wirtinger(spec, factors);
        for (std::size_t p = 0; p < sq.size(); ++p) sq[p] += re[p] * re[p] + im[p] * im[p];
      }
  for (double& v : sq) v = std::sqrt(v);
  const ScalarField mag(grid, std::move(sq));
  return bg.flat() ? lp_norm(mag, p0) : lp_norm(mag, p0, bg.det);
}

}  // namespace cma
