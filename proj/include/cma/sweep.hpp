#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cma/continuation_solver.hpp"
#include "cma/moser.hpp"
#include "cma/rhs_factory.hpp"

namespace cma {

struct SweepRow {
  RhsSpec spec;
  std::string status = "ok";  // "ok" or the error code name
  std::string message;
  double w1p_norm = 0.0;
  double sup_lap_F = 0.0;
  double sup_phi = 0.0;
  double sup_grad_phi = 0.0;
  double sup_n_plus_lap = 0.0;
  double w3p = 0.0;
  std::optional<MoserLadder> delta_ladder;  // absent at n = 1
  std::optional<MoserLadder> gradient_ladder;

  bool ok() const { return status == "ok"; }
};

/// Barrier ladders of a solved state. The delta ladder is skipped at n = 1.
struct StateLadders {
  std::optional<MoserLadder> delta;
  MoserLadder gradient;
};
StateLadders barrier_ladders(const PotentialState& state, const ScalarField& F,
                             const KahlerBackground& bg, double p0);

/// Solves every spec (rows run concurrently on `threads` workers) and returns
/// the rows sorted by W^{1,p0} norm. Solver errors mark the row as failed.
std::vector<SweepRow> sweep_estimates(const std::vector<RhsSpec>& family,
                                      const KahlerBackground& bg, double lambda,
                                      const SolveConfig& cfg, int threads);

}  // namespace cma
