#include "cma/curvature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numbers>

#include "cma/spectral.hpp"

namespace cma {
namespace {

using cplx = std::complex<double>;

// Derivatives of the background potential, cached by the multisets of
// holomorphic and antiholomorphic indices (mixed partials commute).
class PotentialDerivatives {
 public:
  explicit PotentialDerivatives(const ScalarField& potential) : spec_(Spectrum::of(potential)) {}

  const std::pair<ScalarField, ScalarField>& get(std::vector<int> hol, std::vector<int> anti) {
    std::sort(hol.begin(), hol.end());
    std::sort(anti.begin(), anti.end());
    const auto key = std::make_pair(hol, anti);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<Wirtinger> factors;
    for (int i : hol) factors.push_back({i, false});
    for (int j : anti) factors.push_back({j, true});
    return cache_.emplace(key, apply_wirtinger(spec_, factors)).first->second;
  }

 private:
  Spectrum spec_;
  std::map<std::pair<std::vector<int>, std::vector<int>>, std::pair<ScalarField, ScalarField>> cache_;
};

cplx at(const std::pair<ScalarField, ScalarField>& f, std::size_t p) {
  return {f.first[p], f.second[p]};
}

using Tensor4 = std::array<std::array<std::array<std::array<cplx, 2>, 2>, 2>, 2>;

double bisectional(const Tensor4& r, int n, const std::array<cplx, 2>& x,
                   const std::array<cplx, 2>& y) {
  cplx acc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          acc += r[i][j][k][l] * x[i] * std::conj(x[j]) * y[k] * std::conj(y[l]);
  return acc.real();
}

}  // namespace

CurvatureSamples compute_curvature(const KahlerBackground& bg) {
  const GridPtr& grid = bg.grid;
  const int n = grid->n();
  CurvatureSamples out{HermitianField::zeros(grid), ScalarField(grid), 0.0, 0.0};
  if (bg.flat()) return out;

  PotentialDerivatives d(bg.potential);
  double inf_bisec = std::numeric_limits<double>::infinity();
  double bound = 0.0;

  // Fixed rotations of the Cholesky frame: X = cos t v1 + e^{is} sin t v2.
  std::vector<std::pair<double, double>> rotations;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 2; ++b)
      rotations.emplace_back(a * std::numbers::pi / 12.0, b * std::numbers::pi / 2.0);

  using FieldPair = std::pair<ScalarField, ScalarField>;
  // third[i][k][b] = d_k g_{i bbar}; fourth[i][j][k][l] = d_k d_lbar g_{i jbar}.
  std::array<std::array<std::array<const FieldPair*, 2>, 2>, 2> third{};
  std::array<std::array<std::array<std::array<const FieldPair*, 2>, 2>, 2>, 2> fourth{};
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      for (int b = 0; b < n; ++b) third[i][k][b] = &d.get({i, k}, {b});
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) fourth[i][j][k][l] = &d.get({i, k}, {j, l});
    }

  for (std::size_t p = 0; p < grid->size(); ++p) {
    const auto g = bg.metric.at(p);
    const auto G = [&](int i, int j) { return g[i * n + j]; };
    // Inverse metric: ginv[l][k] = g^{k lbar} = (G^{-1})_{l k}.
    std::array<std::array<cplx, 2>, 2> ginv{};
    if (n == 1) {
      ginv[0][0] = 1.0 / G(0, 0);
    } else {
      const cplx det = G(0, 0) * G(1, 1) - G(0, 1) * G(1, 0);
      ginv[0][0] = G(1, 1) / det;
      ginv[0][1] = -G(0, 1) / det;
      ginv[1][0] = -G(1, 0) / det;
      ginv[1][1] = G(0, 0) / det;
    }

    Tensor4 r{};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            cplx v = -at(*fourth[i][j][k][l], p);
            for (int a = 0; a < n; ++a)
              for (int b = 0; b < n; ++b) {
                // g^{a bbar} (d_k g_{i bbar}) (d_lbar g_{a jbar});
                // d_lbar g_{a jbar} = conj(d_l g_{j abar}).
                const cplx dk = at(*third[i][k][b], p);
                const cplx dl = std::conj(at(*third[j][l][a], p));
                v += ginv[b][a] * dk * dl;
              }
            r[i][j][k][l] = v;
          }

    // Ricci: g^{i jbar} R_{i jbar k lbar}.
    std::array<std::array<cplx, 2>, 2> ric{};
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) ric[k][l] += ginv[j][i] * r[i][j][k][l];
    out.ricci.diag[0][p] = ric[0][0].real();
    if (n == 2) {
      out.ricci.diag[1][p] = ric[1][1].real();
      out.ricci.off_re[p] = 0.5 * (ric[0][1] + std::conj(ric[1][0])).real();
      out.ricci.off_im[p] = 0.5 * (ric[0][1] + std::conj(ric[1][0])).imag();
    }

    if (n == 1) {
      const std::array<cplx, 2> x{1.0 / std::sqrt(G(0, 0).real()), 0.0};
      const double hol = bisectional(r, 1, x, x);
      bound = std::max(bound, -hol / 2.0);
      out.min_bisectional.mutable_values()[p] = 0.0;
      continue;
    }

    // Cholesky G = L L^H, orthonormal frame = columns of L^{-T}.
    const double l11 = std::sqrt(G(0, 0).real());
    const cplx l21 = G(1, 0) / l11;
    const double l22 = std::sqrt(G(1, 1).real() - std::norm(l21));
    const std::array<cplx, 2> v1{1.0 / l11, 0.0};
    const std::array<cplx, 2> v2{-l21 / (l11 * l22), 1.0 / l22};

    double local_min = std::numeric_limits<double>::infinity();
    for (const auto& [t, s] : rotations) {
      const cplx e = std::polar(1.0, s);
      std::array<cplx, 2> x{}, y{};
      for (int c = 0; c < 2; ++c) {
        x[c] = std::cos(t) * v1[c] + e * std::sin(t) * v2[c];
        y[c] = -std::conj(e) * std::sin(t) * v1[c] + std::cos(t) * v2[c];
      }
      const double xy = bisectional(r, 2, x, y);
      local_min = std::min(local_min, xy);
      bound = std::max(bound, -xy);
      bound = std::max(bound, -bisectional(r, 2, x, x) / 2.0);
      bound = std::max(bound, -bisectional(r, 2, y, y) / 2.0);
    }
    out.min_bisectional.mutable_values()[p] = local_min;
    inf_bisec = std::min(inf_bisec, local_min);
  }

  out.inf_bisectional = n == 1 ? 0.0 : inf_bisec;
  out.bisectional_bound = bound;
  return out;
}

HermitianField ricci_from_log_det(const KahlerBackground& bg) {
  HermitianField h = mixed_hessian(bg.log_det);
  for (auto& d : h.diag)
    for (double& v : d) v = -v;
  for (double& v : h.off_re) v = -v;
  for (double& v : h.off_im) v = -v;
  return h;
}

}  // namespace cma
