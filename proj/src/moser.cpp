#include "cma/moser.hpp"

#include <algorithm>
#include <cmath>

#include "cma/errors.hpp"
#include "cma/quadrature.hpp"

namespace cma {

const char* to_string(LadderMode mode) {
  return mode == LadderMode::Delta ? "delta" : "gradient";
}

MoserExponents moser_exponents(LadderMode mode, double p0, int n) {
  if (mode == LadderMode::Delta && n < 2)
    throw Error(ErrorCode::InvalidDimension, "delta ladder needs n >= 2");
  if (!(p0 > 2.0 * n))
    throw Error(ErrorCode::SubcriticalExponent, "p0 must exceed 2n for the ladder to close");
  MoserExponents e;
  if (mode == LadderMode::Delta) {
    e.q0 = p0 / (p0 - 2.0);
    e.b = n / ((n - 1.0) * e.q0);
  } else {
    e.q0 = p0 / (p0 - 1.0);
    e.b = 2.0 * n / ((2.0 * n - 1.0) * e.q0);
  }
  return e;
}

bool MoserLadder::monotone() const {
  for (std::size_t k = 1; k < norms.size(); ++k)
    if (norms[k] < norms[k - 1] * (1.0 - 1e-12)) return false;
  return true;
}

MoserLadder moser_track(const ScalarField& u, const ScalarField& weight, LadderMode mode,
                        double p0, int n, double max_exponent) {
  const MoserExponents e = moser_exponents(mode, p0, n);
  MoserLadder ladder;
  ladder.mode = mode;
  ladder.q0 = e.q0;
  ladder.b = e.b;

  const double mass = integrate(weight);
  const ScalarField w = (1.0 / mass) * weight;
  for (double p = 1.0;; p *= e.b) {
    ladder.exponents.push_back(p);
    ladder.norms.push_back(lp_norm(u, p, w));
    if (p >= max_exponent) break;
  }
  ladder.sup = sup_norm(u);
  ladder.limit_ratio = ladder.norms.back() / ladder.sup;

  // Smallest C making each rung of the recurrence hold.
  for (std::size_t k = 0; k + 1 < ladder.norms.size(); ++k) {
    const double ratio = ladder.norms[k + 1] / ladder.norms[k];
    double c;
    if (mode == LadderMode::Delta) {
      const double p = ladder.exponents[k];
      c = std::pow(ratio, p / (2.0 * e.q0)) / p;
    } else {
      const double p = ladder.exponents[k] / e.q0;
      c = std::pow(ratio, 2.0 * p) / p;
    }
    ladder.fitted_C = std::max(ladder.fitted_C, c);
  }
  return ladder;
}

}  // namespace cma
