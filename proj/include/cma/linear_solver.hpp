#pragma once

#include <functional>
#include <span>
#include <vector>

#include "cma/ma_operator.hpp"

namespace cma {

struct GmresOptions {
  double relative_tol = 1e-8;
  int restart = 50;
  int max_iterations = 500;
};

struct GmresResult {
  std::vector<double> x;
  std::vector<double> y;  // preconditioned-space iterate, x = M^{-1} y
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

using LinearOperator = std::function<void(std::span<const double> in, std::span<double> out)>;

/// Restarted right-preconditioned GMRES. `apply_preconditioned` evaluates
/// A M^{-1} y; the iteration solves A M^{-1} y = b from y = 0 and returns
/// x = M^{-1} y.
GmresResult gmres(const LinearOperator& apply_preconditioned, const LinearOperator& precondition,
                  std::span<const double> rhs, const GmresOptions& options);

struct LinearSolveResult {
  ScalarField solution;
  double constant = 0.0;  // c in (Delta_phi + lambda) psi + c = rhs; zero unless lambda = 0
  int iterations = 0;
  double relative_residual = 0.0;
};

/// Solves (Delta_phi + lambda) psi = rhs, preconditioned by the flat
/// spectral inverse of (1/4 Lap + lambda). For lambda = 0 the right-hand
/// side is projected to zero mean against det(g + phi_{i jbar}), the
/// solution is pinned to zero g-mean, and a constant c is solved for
/// alongside psi so that Delta_phi psi + c = rhs holds exactly; c vanishes
/// up to aliasing of the Nyquist modes. Throws LinearSolveFailed when the
/// iteration cap is reached.
LinearSolveResult linear_solve(const PotentialState& state, const ScalarField& rhs,
                               const KahlerBackground& bg, double lambda,
                               const GmresOptions& options);

}  // namespace cma
