#pragma once

#include <utility>
#include <vector>

#include "cma/linear_solver.hpp"

namespace cma {

struct SolveConfig {
  int continuation_steps = 8;
  double newton_tol = 1e-10;
  int max_newton = 30;
  double linear_tol = 1e-8;
  double damping_min_eig = 0.05;
  int max_halvings = 40;
  double p0 = 8.0;  // exponent of the W^{3,p0} diagnostic

  /// Throws ValidationError on a bad field.
  void validate() const;
};

struct StepDiagnostics {
  double damping = 1.0;  // accepted step length t
  int halvings = 0;
  double residual_before = 0.0;
  double residual_after = 0.0;
  double min_eig = 0.0;
  int linear_iterations = 0;
  double shift = 0.0;  // constant added to F by this step (lambda = 0 only)
};

struct StageHistory {
  double t = 0.0;
  std::vector<double> residuals;  // sup-norm, starting with the stage's initial residual
  std::vector<double> damping;
  std::vector<int> linear_iterations;
  double shift = 0.0;  // total constant added to F over the stage
};

struct SolveReport {
  std::vector<StageHistory> stages;
  int continuation_steps_used = 0;
  bool retried = false;
  int newton_steps = 0;
  double final_min_eig = 0.0;
  double final_residual = 0.0;
  double sup_phi = 0.0;
  double sup_grad_phi = 0.0;
  double sup_n_plus_lap = 0.0;
  double min_n_plus_lap = 0.0;
  double w3p = 0.0;
  double p0 = 0.0;
  double wall_seconds = 0.0;
  double discrete_shift = 0.0;
};

struct SolveResult {
  PotentialState state;
  SolveReport report;
  ScalarField F;  // normalized right-hand side actually solved, including discrete_shift
};

/// Damped Newton along F_t = normalize_F(t F), t = k / continuation_steps.
/// On ContinuationStalled the schedule is retried once with twice the steps.
SolveResult solve(const ScalarField& F, const KahlerBackground& bg, double lambda,
                  const SolveConfig& cfg);

/// Starts from an explicit initial state instead of phi = 0 and runs a single
/// stage at the given (already normalized) F. For lambda = 0 the equation is
/// solved up to an additive constant on F, reported in StageHistory::shift;
/// on a grid that resolves phi the constant is at rounding level.
std::pair<PotentialState, StageHistory> solve_stage(const PotentialState& start,
                                                    const ScalarField& F,
                                                    const KahlerBackground& bg, double lambda,
                                                    const SolveConfig& cfg, double tol);

std::pair<PotentialState, StepDiagnostics> newton_step(const PotentialState& state,
                                                       const ScalarField& F,
                                                       const KahlerBackground& bg,
                                                       double lambda, const SolveConfig& cfg);

/// (integral |T|^{p0} dvol_g)^{1/p0} with |T|^2 = sum_{i,j,k} |d_k phi_{i jbar}|^2.
double w3p_seminorm(const PotentialState& state, double p0, const KahlerBackground& bg);

}  // namespace cma
