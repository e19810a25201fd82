#pragma once

#include <limits>
#include <optional>

#include "cma/fields.hpp"

namespace cma {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Trapezoidal rule on the torus: h^{2n} * sum f * weight. Exact for
/// band-limited integrands.
double integrate(const ScalarField& f);
double integrate(const ScalarField& f, const ScalarField& weight);

/// (integral |f|^p weight)^{1/p}; p = infinity is the grid max of |f|.
/// Throws InvalidExponent for p < 1.
double lp_norm(const ScalarField& f, double p);
double lp_norm(const ScalarField& f, double p, const ScalarField& weight);

double sup_norm(const ScalarField& f);
double max_value(const ScalarField& f);
double min_value(const ScalarField& f);

}  // namespace cma
