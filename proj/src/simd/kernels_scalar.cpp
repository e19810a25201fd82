#include <cmath>

#include "cma/simd/kernels.hpp"

namespace cma::simd {
namespace {

void herm2_det_mineig(const double* a, const double* d, const double* cre,
                      const double* cim, double* det, double* mineig,
                      std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    const double c2 = cre[i] * cre[i] + cim[i] * cim[i];
    det[i] = a[i] * d[i] - c2;
    const double half_tr = 0.5 * (a[i] + d[i]);
    const double half_diff = 0.5 * (a[i] - d[i]);
    mineig[i] = half_tr - std::sqrt(half_diff * half_diff + c2);
  }
}

void herm2_inverse_trace(const double* a, const double* d, const double* cre,
                         const double* cim, const double* p, const double* r,
                         const double* qre, const double* qim, double* out,
                         std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    const double det = a[i] * d[i] - (cre[i] * cre[i] + cim[i] * cim[i]);
    const double num = d[i] * p[i] + a[i] * r[i] - 2.0 * (cre[i] * qre[i] + cim[i] * qim[i]);
    out[i] = num / det;
  }
}

void herm1_inverse_trace(const double* a, const double* p, double* out, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) out[i] = p[i] / a[i];
}

double dot(const double* x, const double* y, std::size_t count) {
  double s = 0.0;
  for (std::size_t i = 0; i < count; ++i) s += x[i] * y[i];
  return s;
}

double sum(const double* x, std::size_t count) {
  double s = 0.0;
  for (std::size_t i = 0; i < count; ++i) s += x[i];
  return s;
}

double max_abs(const double* x, std::size_t count) {
  double m = 0.0;
  for (std::size_t i = 0; i < count; ++i) m = std::fmax(m, std::fabs(x[i]));
  return m;
}

void axpy(double alpha, const double* x, double* y, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) y[i] += alpha * x[i];
}

constexpr KernelTable kScalar{
    "scalar", herm2_det_mineig, herm2_inverse_trace, herm1_inverse_trace,
    dot,      sum,              max_abs,             axpy,
};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace cma::simd
