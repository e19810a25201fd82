#pragma once

#include <optional>

#include "cma/ma_operator.hpp"
#include "cma/rhs_factory.hpp"

namespace cma {

struct DeltaBarrierConfig {
  double C1 = 1.0;

  /// C1 = 1 on a flat background, 1 - inf_bisectional + 0.1 otherwise.
  static DeltaBarrierConfig defaults(const KahlerBackground& bg);
  /// Throws ValidationError unless C1 + inf_bisectional >= 0.1.
  void validate(const KahlerBackground& bg) const;
};

/// A(t) = (B + 2) t - t^2 / (2 C0) with C0 = 1 + sup |phi|.
struct GradientBarrierConfig {
  double B = 0.0;
  double C0 = 1.0;

  static GradientBarrierConfig for_state(const PotentialState& state, const KahlerBackground& bg);
  double A(double t) const { return (B + 2.0) * t - t * t / (2.0 * C0); }
  double A_prime(double t) const { return B + 2.0 - t / C0; }
  double A_second() const { return -1.0 / C0; }
};

/// u = exp(-C1 phi) (n + Delta phi).
ScalarField delta_barrier(const PotentialState& state, const KahlerBackground& bg,
                          const DeltaBarrierConfig& cfg);

/// u = exp(-A(phi)) (|grad phi|^2 + 1).
ScalarField gradient_barrier(const PotentialState& state, const KahlerBackground& bg,
                             const GradientBarrierConfig& cfg);

/// True when B + 1 <= A'(phi) <= B + 3 at every grid point.
bool a_prime_in_bracket(const PotentialState& state, const GradientBarrierConfig& cfg);

/// Fitted constants of C2 (n + Delta phi)^{n/(n-1)} + exp(-C1 phi) Delta F - C3 <= Delta_phi u.
struct YauFit {
  double C2 = 0.0;
  double C3 = 0.0;
  double worst_margin = 0.0;
  // Smallest pointwise value of Delta_phi u minus the right side of Yau's
  // second order inequality with the sampled curvature infimum.
  double yau_margin = 0.0;
};

/// Fitted constants of
/// Delta_phi u >= eps0 |grad phi|^{2+2/n} + exp(-A) (n + Delta phi) - C |grad F||grad phi| - C.
struct GradientFit {
  double eps0 = 0.0;
  double C = 0.0;
  double worst_margin = 0.0;
};

/// Both checks need third derivatives of phi and refuse rough data with
/// RoughInput. `kind` is the provenance of F when known; otherwise F must be
/// spectrally band-limited below m/4.
YauFit check_yau_inequality(const PotentialState& state, const ScalarField& F,
                            const KahlerBackground& bg, const DeltaBarrierConfig& cfg,
                            std::optional<RhsKind> kind = std::nullopt);

GradientFit check_gradient_differential_inequality(const PotentialState& state,
                                                   const ScalarField& F,
                                                   const KahlerBackground& bg,
                                                   std::optional<RhsKind> kind = std::nullopt);

/// Fraction of spectral energy (mean excluded) in modes with max |k| >= m/4.
double spectral_tail_ratio(const ScalarField& F);

/// Largest a and smallest b >= 0 with a x_p - b z_p <= d_p at every point.
/// The budget for b is twice its minimum at a = 0 (or 1 if that minimum is
/// zero); a is maximized under that budget, capped at 1e6, and b is then
/// re-minimized.
struct LinearFit {
  double a = 0.0;
  double b = 0.0;
  double worst_margin = 0.0;
};
LinearFit fit_lower_bound(std::span<const double> x, std::span<const double> z,
                          std::span<const double> d);

}  // namespace cma
