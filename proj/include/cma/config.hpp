#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cma/continuation_solver.hpp"
#include "cma/rhs_factory.hpp"
#include "cma/sobolev.hpp"

namespace cma {

enum class Command { Solve, Sweep, CheckInequalities, Moser, Sobolev };

const char* to_string(Command c);
std::optional<Command> parse_command(std::string_view name);

/// Line-oriented run description:
///
///   # comment
///   [grid]        n, m
///   [background]  mode = flat | perturbed, term = amp:cos|sin:axis:freq (repeatable)
///   [equation]    lambda = -1 | 0 | 1
///   [solver]      continuation_steps, newton_tol, max_newton, linear_tol,
///                 damping_min_eig, max_halvings
///   [rhs]         kind = smooth | cusp | manufactured, seed, amplitude,
///                 bandwidth, center = c1,c2[,c3,c4], beta, cutoff_radius,
///                 mollification, p0, term (repeatable); the section itself
///                 repeats, one per family member
///   [run]         seed, p0, samples, trials, variant = two-norm | one-norm,
///                 save_fields = true | false
struct RunConfig {
  Command command = Command::Solve;
  int n = 1;
  int m = 64;
  bool perturbed = false;
  std::vector<TrigTerm> background_terms;
  double lambda = 0.0;
  SolveConfig solver;
  std::vector<RhsSpec> rhs;
  std::vector<bool> rhs_seed_explicit;
  std::uint64_t seed = 1;
  double p0 = 8.0;
  long samples = 100000;
  int trials = 200;
  std::optional<SobolevVariant> variant;  // both variants when unset
  bool save_fields = true;

  /// Seeds after applying a CMA_SEED style override: rhs sections without
  /// an explicit seed take seed + index.
  void apply_seed(std::uint64_t new_seed);
};

/// Parses and validates. Throws ParseError ("line L, column C: ...") for
/// syntax problems and unknown keys, ValidationError ("<section>.<key>: ...")
/// for values that break a downstream precondition.
RunConfig parse_config(std::string_view text, Command command);

}  // namespace cma
