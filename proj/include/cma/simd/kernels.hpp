#pragma once

#include <cstddef>

namespace cma::simd {

// Pointwise kernels over structure-of-arrays grid data. A 2x2 Hermitian
// matrix [[a, c], [conj(c), d]] is passed as the four real arrays
// (a, d, c.re, c.im). Every variant must agree with the scalar reference
// up to rounding; reductions may differ in summation order.
struct KernelTable {
  const char* name;

  void (*herm2_det_mineig)(const double* a, const double* d, const double* cre,
                           const double* cim, double* det, double* mineig,
                           std::size_t count);

  // out = tr(M^{-1} H) for M = [[a, c], [c*, d]], H = [[p, q], [q*, r]].
  void (*herm2_inverse_trace)(const double* a, const double* d, const double* cre,
                              const double* cim, const double* p, const double* r,
                              const double* qre, const double* qim, double* out,
                              std::size_t count);

  // out = p / a (the 1x1 case of the above).
  void (*herm1_inverse_trace)(const double* a, const double* p, double* out,
                              std::size_t count);

  double (*dot)(const double* x, const double* y, std::size_t count);
  double (*sum)(const double* x, std::size_t count);
  double (*max_abs)(const double* x, std::size_t count);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t count);
};

const KernelTable& scalar_kernels();

// nullptr when the binary was built without AVX2 support or the running CPU
// lacks AVX2/FMA.
const KernelTable* avx2_kernels();

// The table used by the library. Chosen once: CMA_SIMD=scalar forces the
// reference path, CMA_SIMD=avx2 requests AVX2 (falls back if unsupported),
// anything else picks the widest supported variant.
const KernelTable& active();

}  // namespace cma::simd
