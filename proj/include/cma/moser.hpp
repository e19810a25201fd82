#pragma once

#include <vector>

#include "cma/fields.hpp"

namespace cma {

enum class LadderMode { Delta, Gradient };

const char* to_string(LadderMode mode);

struct MoserExponents {
  double q0 = 0.0;
  double b = 0.0;
};

/// Delta mode: 1/q0 + 2/p0 = 1, b = n / ((n-1) q0).
/// Gradient mode: 1/q0 + 1/p0 = 1, b = 2n / ((2n-1) q0).
/// Throws SubcriticalExponent when p0 <= 2n and InvalidDimension for the
/// delta mode at n = 1.
MoserExponents moser_exponents(LadderMode mode, double p0, int n);

struct MoserLadder {
  LadderMode mode = LadderMode::Delta;
  double q0 = 0.0;
  double b = 0.0;
  std::vector<double> exponents;  // p_k = b^k, k = 0..K, with p_K the first >= max_exponent
  std::vector<double> norms;      // ||u||_{L^{p_k}} against the normalized weight
  double fitted_C = 0.0;
  double sup = 0.0;
  double limit_ratio = 0.0;  // norms.back() / sup

  bool monotone() const;
};

/// Norm ladder of a positive barrier u. `weight` is the volume density
/// (e.g. e^F det g); it is rescaled to total mass one.
MoserLadder moser_track(const ScalarField& u, const ScalarField& weight, LadderMode mode,
                        double p0, int n, double max_exponent = 64.0);

}  // namespace cma
