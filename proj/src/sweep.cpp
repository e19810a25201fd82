#include "cma/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "cma/barriers.hpp"
#include "cma/errors.hpp"
#include "cma/quadrature.hpp"

namespace cma {

StateLadders barrier_ladders(const PotentialState& state, const ScalarField& F,
                             const KahlerBackground& bg, double p0) {
  const int n = bg.grid->n();
  const ScalarField weight = volume_form_phi(state, F, bg).weight;
  StateLadders out;
  if (n >= 2) {
    const ScalarField u = delta_barrier(state, bg, DeltaBarrierConfig::defaults(bg));
    out.delta = moser_track(u, weight, LadderMode::Delta, p0, n);
  }
  const ScalarField v = gradient_barrier(state, bg, GradientBarrierConfig::for_state(state, bg));
  out.gradient = moser_track(v, weight, LadderMode::Gradient, p0, n);
  return out;
}

namespace {

SweepRow run_row(const RhsSpec& spec, const KahlerBackground& bg, double lambda,
                 SolveConfig cfg) {
  SweepRow row;
  row.spec = spec;
  try {
    const RightHandSide rhs = generate_rhs(spec, bg);
    row.w1p_norm = w1p_norm(rhs.F, spec.p0, bg);
    row.sup_lap_F = sup_norm(laplacian(rhs.F, bg));
    cfg.p0 = spec.p0;
    const SolveResult res = solve(rhs.F, bg, lambda, cfg);
    row.sup_phi = res.report.sup_phi;
    row.sup_grad_phi = res.report.sup_grad_phi;
    row.sup_n_plus_lap = res.report.sup_n_plus_lap;
    row.w3p = res.report.w3p;
    StateLadders ladders = barrier_ladders(res.state, res.F, bg, spec.p0);
    row.delta_ladder = std::move(ladders.delta);
    row.gradient_ladder = std::move(ladders.gradient);
  } catch (const Error& e) {
    row.status = to_string(e.code());
    row.message = e.what();
  }
  return row;
}

}  // namespace

std::vector<SweepRow> sweep_estimates(const std::vector<RhsSpec>& family,
                                      const KahlerBackground& bg, double lambda,
                                      const SolveConfig& cfg, int threads) {
  std::vector<SweepRow> rows(family.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < family.size(); i = next++)
      rows[i] = run_row(family[i], bg, lambda, cfg);
  };
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(family.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.ok() != b.ok()) return a.ok();
    return a.w1p_norm < b.w1p_norm;
  });
  return rows;
}

}  // namespace cma
