#include "cma/run.hpp"

#include <chrono>
#include <cmath>

#include "cma/barriers.hpp"
#include "cma/errors.hpp"
#include "cma/quadrature.hpp"
#include "cma/report.hpp"

namespace cma {
namespace {

using nlohmann::json;

KahlerBackground make_background(const RunConfig& cfg) {
  GridPtr grid = make_grid(cfg.n, cfg.m);
  if (!cfg.perturbed) return flat_background(grid);
  return perturbed_background(trig_field(grid, cfg.background_terms));
}

json header(const RunConfig& cfg, const KahlerBackground& bg) {
  return {{"command", to_string(cfg.command)},
          {"grid", {{"n", cfg.n}, {"m", cfg.m}}},
          {"background", to_json(bg)},
          {"lambda", cfg.lambda},
          {"seed", cfg.seed}};
}

struct Solved {
  RightHandSide rhs;
  SolveResult result;
};

Solved solve_first(const RunConfig& cfg, const KahlerBackground& bg, std::ostream& log) {
  const RhsSpec& spec = cfg.rhs.front();
  RightHandSide rhs = generate_rhs(spec, bg);
  SolveConfig scfg = cfg.solver;
  scfg.p0 = spec.p0;
  SolveResult res = solve(rhs.F, bg, cfg.lambda, scfg);
  log << "solve: " << res.report.newton_steps << " Newton steps, residual "
      << res.report.final_residual << ", " << res.report.wall_seconds << " s\n";
  return {std::move(rhs), std::move(res)};
}

json ladders_json(const StateLadders& l, ArtifactWriter& w) {
  json j;
  if (l.delta) {
    j["delta"] = to_json(*l.delta);
    w.text("ladder_delta.csv", ladder_csv(*l.delta));
  }
  j["gradient"] = to_json(l.gradient);
  w.text("ladder_gradient.csv", ladder_csv(l.gradient));
  return j;
}

int run_solve(const RunConfig& cfg, const KahlerBackground& bg, ArtifactWriter& w,
              std::ostream& log) {
  const Solved s = solve_first(cfg, bg, log);
  const PotentialState& state = s.result.state;
  const RhsSpec& spec = cfg.rhs.front();
  json doc = header(cfg, bg);
  json rhs = to_json(spec, cfg.n);
  rhs["w1p_norm"] = w1p_norm(s.result.F, spec.p0, bg);
  rhs["sup_lap_F"] = sup_norm(laplacian(s.result.F, bg));
  doc["rhs"] = rhs;
  doc["solver"] = to_json(cfg.solver);
  doc["solve"] = to_json(s.result.report);
  if (s.rhs.has_exact) doc["exact_error"] = sup_norm(state.phi - s.rhs.exact_phi);

  // The pointwise equation reads log det ratio = F - lambda phi.
  const ScalarField F_eff = s.result.F - cfg.lambda * state.phi;
  json checks;
  const double ibp_lhs = integrate(complex_gradient_sq(state.phi, bg), bg.det);
  const double ibp_rhs = -integrate(hadamard(state.phi, laplacian(state.phi, bg)), bg.det);
  checks["integration_by_parts"] = {
      {"lhs", ibp_lhs}, {"rhs", ibp_rhs}, {"abs_error", std::fabs(ibp_lhs - ibp_rhs)}};
  checks["volume_consistency"] = volume_form_phi(state, s.result.F, bg).consistency;
  checks["a_prime_in_bracket"] =
      a_prime_in_bracket(state, GradientBarrierConfig::for_state(state, bg));
  auto guarded = [&](const char* key, auto&& fn) {
    try {
      checks[key] = fn();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::RoughInput && e.code() != ErrorCode::InvalidDimension) throw;
      checks[key] = {{"skipped", std::string(to_string(e.code()))}};
    }
  };
  guarded("yau", [&] {
    return to_json(check_yau_inequality(state, F_eff, bg, DeltaBarrierConfig::defaults(bg),
                                        s.rhs.kind));
  });
  guarded("gradient_inequality", [&] {
    return to_json(check_gradient_differential_inequality(state, F_eff, bg, s.rhs.kind));
  });
  doc["checks"] = checks;
  doc["ladders"] = ladders_json(barrier_ladders(state, s.result.F, bg, spec.p0), w);

  w.json("report.json", doc);
  w.text("history.csv", history_csv(s.result.report));
  if (cfg.save_fields) {
    w.field("phi.field", state.phi, "phi");
    w.field("F.field", s.result.F, "F");
  }
  return kExitOk;
}

int run_moser(const RunConfig& cfg, const KahlerBackground& bg, ArtifactWriter& w,
              std::ostream& log) {
  const Solved s = solve_first(cfg, bg, log);
  const double p0 = cfg.rhs.front().p0;
  json doc = header(cfg, bg);
  json exps;
  for (LadderMode mode : {LadderMode::Delta, LadderMode::Gradient}) {
    if (mode == LadderMode::Delta && cfg.n < 2) continue;
    const MoserExponents e = moser_exponents(mode, p0, cfg.n);
    exps[to_string(mode)] = {{"q0", e.q0}, {"b", e.b}};
  }
  doc["p0"] = p0;
  doc["exponents"] = exps;
  doc["solve"] = to_json(s.result.report);
  doc["ladders"] = ladders_json(barrier_ladders(s.result.state, s.result.F, bg, p0), w);
  w.json("report.json", doc);
  return kExitOk;
}

int run_sweep(const RunConfig& cfg, const KahlerBackground& bg, int threads, ArtifactWriter& w,
              std::ostream& log) {
  const std::vector<SweepRow> rows = sweep_estimates(cfg.rhs, bg, cfg.lambda, cfg.solver, threads);
  json doc = header(cfg, bg);
  doc["solver"] = to_json(cfg.solver);
  json jrows = json::array();
  int failed = 0;
  for (const SweepRow& r : rows) {
    json j = {{"rhs", to_json(r.spec, cfg.n)}, {"status", r.status}};
    if (r.ok()) {
      j["w1p_norm"] = r.w1p_norm;
      j["sup_lap_F"] = r.sup_lap_F;
      j["sup_phi"] = r.sup_phi;
      j["sup_grad_phi"] = r.sup_grad_phi;
      j["sup_n_plus_lap"] = r.sup_n_plus_lap;
      j["w3p"] = r.w3p;
      if (r.delta_ladder) j["ladder_delta"] = to_json(*r.delta_ladder);
      if (r.gradient_ladder) j["ladder_gradient"] = to_json(*r.gradient_ladder);
    } else {
      ++failed;
      j["message"] = r.message;
      log << "sweep row failed: " << r.message << "\n";
    }
    jrows.push_back(j);
  }
  doc["rows"] = jrows;
  doc["failed_rows"] = failed;
  w.json("report.json", doc);
  w.text("sweep.csv", sweep_csv(rows));
  return failed == 0 ? kExitOk : kExitSolverFailure;
}

int run_inequalities(const RunConfig& cfg, int threads, ArtifactWriter& w) {
  SuiteOptions opts;
  opts.samples = cfg.samples;
  opts.seed = cfg.seed;
  opts.threads = threads;
  const std::vector<SuiteStats> suites = run_all_suites(opts);

  json doc = {{"command", to_string(cfg.command)}, {"seed", cfg.seed}, {"samples", cfg.samples}};
  json js = json::array();
  bool ok = true;
  std::string csv = "check,n,samples,min_margin,max_relative_error,passed\n";
  for (const SuiteStats& s : suites) {
    js.push_back(to_json(s));
    ok = ok && s.passed;
    csv += s.name + "," + std::to_string(s.n) + "," + std::to_string(s.samples) + "," +
           format_number(s.min_margin) + "," + format_number(s.max_relative_error) + "," +
           (s.passed ? "true" : "false") + "\n";
  }
  doc["suites"] = js;

  const double amgm_eq = check_amgm_3_12({0.0, 0.0});
  const double s = 1.7;
  const double elem_eq = check_elementary_3_13(s * s, s, s, 2);
  doc["equality_cases"] = {{"amgm_zero_tuple_n2", amgm_eq}, {"elementary_n2", elem_eq}};
  ok = ok && std::fabs(amgm_eq) <= 1e-10 && std::fabs(elem_eq) <= 1e-10;

  json young = json::array();
  for (int n = 2; n <= 4; ++n)
    for (double eps : {0.1, 1.0, 10.0}) {
      const YoungConstant y = young_constant(eps, n);
      const double rel = std::fabs(y.numeric - y.closed_form) / y.closed_form;
      ok = ok && rel <= 1e-6;
      young.push_back({{"n", n}, {"eps", eps}, {"numeric", y.numeric},
                       {"closed_form", y.closed_form}, {"relative_error", rel}});
    }
  doc["young_constants"] = young;
  doc["passed"] = ok;
  w.json("report.json", doc);
  w.text("inequalities.csv", csv);
  return ok ? kExitOk : kExitSolverFailure;
}

int run_sobolev(const RunConfig& cfg, const KahlerBackground& bg, ArtifactWriter& w) {
  std::vector<SobolevVariant> variants;
  if (cfg.variant) variants.push_back(*cfg.variant);
  else {
    if (cfg.n >= 2) variants.push_back(SobolevVariant::TwoNorm);
    variants.push_back(SobolevVariant::OneNorm);
  }
  json doc = header(cfg, bg);
  json probes = json::array();
  std::string csv = "variant,trials,lower_bound,best_class\n";
  for (SobolevVariant v : variants) {
    const SobolevProbe p = sobolev_probe(bg, v, cfg.trials, cfg.seed);
    probes.push_back(to_json(p));
    csv += std::string(to_string(v)) + "," + std::to_string(p.trials) + "," +
           format_number(p.lower_bound) + "," + p.best_class + "\n";
  }
  doc["probes"] = probes;
  w.json("report.json", doc);
  w.text("sobolev.csv", csv);
  return kExitOk;
}

}  // namespace

int run(const RunConfig& cfg, const std::filesystem::path& out, int threads, std::ostream& log) {
  const auto begin = std::chrono::steady_clock::now();
  std::optional<ArtifactWriter> writer;
  try {
    writer.emplace(out);
    int status = kExitOk;
    if (cfg.command == Command::CheckInequalities) {
      status = run_inequalities(cfg, threads, *writer);
    } else {
      const KahlerBackground bg = make_background(cfg);
      switch (cfg.command) {
        case Command::Solve: status = run_solve(cfg, bg, *writer, log); break;
        case Command::Moser: status = run_moser(cfg, bg, *writer, log); break;
        case Command::Sweep: status = run_sweep(cfg, bg, threads, *writer, log); break;
        case Command::Sobolev: status = run_sobolev(cfg, bg, *writer); break;
        case Command::CheckInequalities: break;
      }
    }
    writer->finish();
    log << to_string(cfg.command) << " finished in "
        << std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count()
        << " s\n";
    return status;
  } catch (const Error& e) {
    if (writer) writer->discard();
    log << "error: " << e.what() << "\n";
    const bool config = e.code() == ErrorCode::ParseError || e.code() == ErrorCode::ValidationError ||
                        e.code() == ErrorCode::InvalidDimension ||
                        e.code() == ErrorCode::InvalidResolution;
    return config ? kExitConfigError : kExitSolverFailure;
  }
}

}  // namespace cma
