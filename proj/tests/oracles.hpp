#pragma once

#include <complex>
#include <numbers>
#include <utility>
#include <vector>

namespace cma::testing {

// Independent n = 1 oracle: solves (1/4)(u_xx + u_yy) = g with a separable
// direct DFT (no FFT library), zero-mean solution.
inline std::vector<double> poisson_oracle(const std::vector<double>& g, int m) {
  using C = std::complex<double>;
  std::vector<C> w(m);
  for (int k = 0; k < m; ++k) w[k] = std::polar(1.0, -2.0 * std::numbers::pi * k / m);
  auto dft_rows = [&](std::vector<C>& a, bool inverse) {
    std::vector<C> row(m);
    for (int i = 0; i < m; ++i) {
      for (int k = 0; k < m; ++k) {
        C s = 0.0;
        for (int j = 0; j < m; ++j) {
          const C t = w[(k * j) % m];
          s += a[i * m + j] * (inverse ? std::conj(t) : t);
        }
        row[k] = s;
      }
      for (int k = 0; k < m; ++k) a[i * m + k] = row[k];
    }
  };
  auto transpose = [&](std::vector<C>& a) {
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) std::swap(a[i * m + j], a[j * m + i]);
  };
  std::vector<C> a(g.begin(), g.end());
  dft_rows(a, false);
  transpose(a);
  dft_rows(a, false);
  for (int kx = 0; kx < m; ++kx)
    for (int ky = 0; ky < m; ++ky) {
      const int fx = 2 * kx <= m ? kx : kx - m;
      const int fy = 2 * ky <= m ? ky : ky - m;
      const double symbol = -std::numbers::pi * std::numbers::pi * (fx * fx + fy * fy);
      a[kx * m + ky] = symbol == 0.0 ? 0.0 : a[kx * m + ky] / symbol;
    }
  dft_rows(a, true);
  transpose(a);
  dft_rows(a, true);
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = a[i].real() / (double(m) * m);
  return out;
}

}  // namespace cma::testing
