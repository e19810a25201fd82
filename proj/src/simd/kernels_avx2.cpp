// Compiled with -mavx2 -mfma. Nothing in here may run unless dispatch.cpp
// has confirmed CPU support.
#include <immintrin.h>

#include <cmath>

#include "cma/simd/kernels.hpp"

namespace cma::simd {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sw = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sw));
}

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  __m128d sw = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_max_sd(lo, sw));
}

void herm2_det_mineig(const double* a, const double* d, const double* cre,
                      const double* cim, double* det, double* mineig,
                      std::size_t count) {
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d va = _mm256_loadu_pd(a + i);
    const __m256d vd = _mm256_loadu_pd(d + i);
    const __m256d vr = _mm256_loadu_pd(cre + i);
    const __m256d vi = _mm256_loadu_pd(cim + i);
    const __m256d c2 = _mm256_add_pd(_mm256_mul_pd(vr, vr), _mm256_mul_pd(vi, vi));
    _mm256_storeu_pd(det + i, _mm256_sub_pd(_mm256_mul_pd(va, vd), c2));
    const __m256d half_tr = _mm256_mul_pd(half, _mm256_add_pd(va, vd));
    const __m256d half_diff = _mm256_mul_pd(half, _mm256_sub_pd(va, vd));
    const __m256d disc = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(half_diff, half_diff), c2));
    _mm256_storeu_pd(mineig + i, _mm256_sub_pd(half_tr, disc));
  }
  for (; i < count; ++i) {
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
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d va = _mm256_loadu_pd(a + i);
    const __m256d vd = _mm256_loadu_pd(d + i);
    const __m256d vr = _mm256_loadu_pd(cre + i);
    const __m256d vi = _mm256_loadu_pd(cim + i);
    const __m256d c2 = _mm256_add_pd(_mm256_mul_pd(vr, vr), _mm256_mul_pd(vi, vi));
    const __m256d det = _mm256_sub_pd(_mm256_mul_pd(va, vd), c2);
    const __m256d cross = _mm256_add_pd(_mm256_mul_pd(vr, _mm256_loadu_pd(qre + i)),
                                        _mm256_mul_pd(vi, _mm256_loadu_pd(qim + i)));
    const __m256d diag = _mm256_add_pd(_mm256_mul_pd(vd, _mm256_loadu_pd(p + i)),
                                       _mm256_mul_pd(va, _mm256_loadu_pd(r + i)));
    const __m256d num = _mm256_sub_pd(diag, _mm256_mul_pd(two, cross));
    _mm256_storeu_pd(out + i, _mm256_div_pd(num, det));
  }
  for (; i < count; ++i) {
    const double det = a[i] * d[i] - (cre[i] * cre[i] + cim[i] * cim[i]);
    const double num = d[i] * p[i] + a[i] * r[i] - 2.0 * (cre[i] * qre[i] + cim[i] * qim[i]);
    out[i] = num / det;
  }
}

void herm1_inverse_trace(const double* a, const double* p, double* out, std::size_t count) {
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4)
    _mm256_storeu_pd(out + i, _mm256_div_pd(_mm256_loadu_pd(p + i), _mm256_loadu_pd(a + i)));
  for (; i < count; ++i) out[i] = p[i] / a[i];
}

double dot(const double* x, const double* y, std::size_t count) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= count; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < count; ++i) s += x[i] * y[i];
  return s;
}

double sum(const double* x, std::size_t count) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= count; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
    acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < count; ++i) s += x[i];
  return s;
}

double max_abs(const double* x, std::size_t count) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4)
    acc = _mm256_max_pd(acc, _mm256_andnot_pd(sign, _mm256_loadu_pd(x + i)));
  double m = hmax(acc);
  for (; i < count; ++i) m = std::fmax(m, std::fabs(x[i]));
  return m;
}

void axpy(double alpha, const double* x, double* y, std::size_t count) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < count; ++i) y[i] += alpha * x[i];
}

}  // namespace

extern const KernelTable kAvx2Table;
const KernelTable kAvx2Table{
    "avx2", herm2_det_mineig, herm2_inverse_trace, herm1_inverse_trace,
    dot,    sum,              max_abs,             axpy,
};

}  // namespace cma::simd
