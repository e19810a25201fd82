#include "cma/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "cma/errors.hpp"
#include "cma/simd/kernels.hpp"

namespace cma {
namespace {

void check_exponent(double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidExponent, "L^p exponent must be >= 1");
}

double lp_impl(const ScalarField& f, double p, const ScalarField* weight) {
  check_exponent(p);
  if (std::isinf(p)) return sup_norm(f);
  const auto v = f.values();
  // Scale by the max so |f|^p cannot overflow for large p.
  const double scale = sup_norm(f);
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double w = weight ? (*weight)[i] : 1.0;
    acc += std::pow(std::fabs(v[i]) / scale, p) * w;
  }
  return scale * std::pow(acc * f.grid().cell_volume(), 1.0 / p);
}

}  // namespace

double integrate(const ScalarField& f) {
  const auto v = f.values();
  return simd::active().sum(v.data(), v.size()) * f.grid().cell_volume();
}

double integrate(const ScalarField& f, const ScalarField& weight) {
  const auto v = f.values();
  return simd::active().dot(v.data(), weight.values().data(), v.size()) * f.grid().cell_volume();
}

double lp_norm(const ScalarField& f, double p) { return lp_impl(f, p, nullptr); }

double lp_norm(const ScalarField& f, double p, const ScalarField& weight) {
  return lp_impl(f, p, &weight);
}

double sup_norm(const ScalarField& f) {
  const auto v = f.values();
  return simd::active().max_abs(v.data(), v.size());
}

double max_value(const ScalarField& f) {
  const auto v = f.values();
  return *std::max_element(v.begin(), v.end());
}

double min_value(const ScalarField& f) {
  const auto v = f.values();
  return *std::min_element(v.begin(), v.end());
}

}  // namespace cma
