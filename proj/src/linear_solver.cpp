#include "cma/linear_solver.hpp"

#include <cmath>

#include "cma/errors.hpp"
#include "cma/quadrature.hpp"
#include "cma/simd/kernels.hpp"
#include "cma/spectral.hpp"

namespace cma {
namespace {

double norm2(std::span<const double> v) {
  return std::sqrt(simd::active().dot(v.data(), v.data(), v.size()));
}

}  // namespace

GmresResult gmres(const LinearOperator& apply, const LinearOperator& precondition,
                  std::span<const double> rhs, const GmresOptions& options) {
  const auto& k = simd::active();
  const std::size_t size = rhs.size();
  GmresResult result;
  result.x.assign(size, 0.0);
  result.y.assign(size, 0.0);

  const double bnorm = norm2(rhs);
  if (bnorm == 0.0) {
    result.converged = true;
    return result;
  }

  const int restart = options.restart;
  std::vector<std::vector<double>> basis;
  std::vector<std::vector<double>> hess(restart + 1, std::vector<double>(restart, 0.0));
  std::vector<double> cs(restart), sn(restart), g(restart + 1);
  std::vector<double> r(size), w(size);

  // y accumulates in preconditioned space; x = M^{-1} y at the end.
  std::vector<double> y(size, 0.0);
  double rel = 1.0;

  while (result.iterations < options.max_iterations) {
    // r = b - A M^{-1} y
    apply(y, w);
    for (std::size_t i = 0; i < size; ++i) r[i] = rhs[i] - w[i];
    double beta = norm2(r);
    rel = beta / bnorm;
    if (rel <= options.relative_tol) break;

    if (basis.empty()) basis.emplace_back(size);
    for (std::size_t i = 0; i < size; ++i) basis[0][i] = r[i] / beta;
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;

    int j = 0;
    for (; j < restart && result.iterations < options.max_iterations; ++j) {
      ++result.iterations;
      apply(basis[j], w);
      for (int i = 0; i <= j; ++i) {
        hess[i][j] = k.dot(w.data(), basis[i].data(), size);
        k.axpy(-hess[i][j], basis[i].data(), w.data(), size);
      }
      hess[j + 1][j] = norm2(w);
      if (static_cast<int>(basis.size()) < j + 2) basis.emplace_back(size);
      if (hess[j + 1][j] != 0.0)
        for (std::size_t i = 0; i < size; ++i) basis[j + 1][i] = w[i] / hess[j + 1][j];

      for (int i = 0; i < j; ++i) {
        const double t = cs[i] * hess[i][j] + sn[i] * hess[i + 1][j];
        hess[i + 1][j] = -sn[i] * hess[i][j] + cs[i] * hess[i + 1][j];
        hess[i][j] = t;
      }
      const double denom = std::hypot(hess[j][j], hess[j + 1][j]);
      cs[j] = hess[j][j] / denom;
      sn[j] = hess[j + 1][j] / denom;
      hess[j][j] = denom;
      hess[j + 1][j] = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];

      rel = std::fabs(g[j + 1]) / bnorm;
      if (rel <= options.relative_tol) {
        ++j;
        break;
      }
    }

    // Back-substitute the j x j triangular system and update y.
    std::vector<double> coef(j);
    for (int i = j - 1; i >= 0; --i) {
      double s = g[i];
      for (int l = i + 1; l < j; ++l) s -= hess[i][l] * coef[l];
      coef[i] = s / hess[i][i];
    }
    for (int i = 0; i < j; ++i) k.axpy(coef[i], basis[i].data(), y.data(), size);
    if (rel <= options.relative_tol) break;
  }

  // Report the true residual, not the Arnoldi estimate.
  precondition(y, result.x);
  apply(y, w);
  result.y = y;
  for (std::size_t i = 0; i < size; ++i) r[i] = rhs[i] - w[i];
  result.relative_residual = norm2(r) / bnorm;
  result.converged = result.relative_residual <= options.relative_tol * 10.0 ||
                     rel <= options.relative_tol;
  return result;
}

LinearSolveResult linear_solve(const PotentialState& state, const ScalarField& rhs,
                               const KahlerBackground& bg, double lambda,
                               const GmresOptions& options) {
  const GridPtr& grid = bg.grid;
  const bool pinned = lambda == 0.0;
  const std::size_t size = grid->size();
  const auto& k = simd::active();

  // Split rhs = b + kappa with b of zero dvol_phi mean.
  std::vector<double> b(rhs.values().begin(), rhs.values().end());
  double kappa = 0.0;
  if (pinned) {
    kappa = k.dot(b.data(), state.det.values().data(), size) / k.sum(state.det.values().data(), size);
    for (double& v : b) v -= kappa;
  }

  const LinearOperator precondition = [&](std::span<const double> in, std::span<double> out) {
    ScalarField f(grid, std::vector<double>(in.begin(), in.end()));
    ScalarField psi = flat_inverse(f, lambda);
    if (pinned) psi = project_zero_mean(psi, bg);
    std::copy(psi.values().begin(), psi.values().end(), out.begin());
  };
  // A M^{-1} y without leaving spectral space in between. The zero g-mean
  // pin only moves the constant mode, which the Hessian annihilates. For
  // lambda = 0 the mean of y, which M^{-1} discards, carries the unknown
  // constant c of Delta_phi psi + c = b, so the operator is nonsingular even
  // when b is only approximately in the range of Delta_phi.
  const LinearOperator apply = [&](std::span<const double> in, std::span<double> out) {
    const ScalarField y(grid, std::vector<double>(in.begin(), in.end()));
    const Spectrum y_hat = Spectrum::of(y);
    const Spectrum psi = flat_inverse(y_hat, lambda);
    ScalarField r = inverse_trace(state.metric, mixed_hessian(psi));
    std::copy(r.values().begin(), r.values().end(), out.begin());
    if (pinned) {
      const double mean = y_hat.coeffs[0].real() / static_cast<double>(size);
      for (double& v : out) v += mean;
    } else {
      const ScalarField p = to_field(psi);
      k.axpy(lambda, p.values().data(), out.data(), out.size());
    }
  };

  GmresResult res = gmres(apply, precondition, b, options);
  if (!res.converged)
    throw Error(ErrorCode::LinearSolveFailed,
                "GMRES stopped at relative residual " + std::to_string(res.relative_residual) +
                    " after " + std::to_string(res.iterations) + " iterations");
  double constant = 0.0;
  if (pinned) constant = kappa + k.sum(res.y.data(), size) / static_cast<double>(size);
  return {ScalarField(grid, std::move(res.x)), constant, res.iterations, res.relative_residual};
}

}  // namespace cma
