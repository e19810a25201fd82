#include "cma/fields.hpp"

#include <cmath>
#include <stdexcept>

#include "cma/errors.hpp"
#include "cma/simd/kernels.hpp"

namespace cma {

ScalarField::ScalarField(GridPtr grid) : grid_(std::move(grid)), values_(grid_->size(), 0.0) {}

ScalarField::ScalarField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_->size())
    throw std::invalid_argument("field size does not match grid");
}

ScalarField ScalarField::constant(GridPtr grid, double value) {
  const std::size_t n = grid->size();
  return ScalarField(std::move(grid), std::vector<double>(n, value));
}

ScalarField ScalarField::sample(GridPtr grid,
                                const std::function<double(std::span<const double>)>& fn) {
  ScalarField out(grid);
  std::array<double, TorusGrid::kMaxAxes> coords{};
  const int axes = grid->axes();
  const double h = grid->spacing();
  for (std::size_t p = 0; p < grid->size(); ++p) {
    const auto idx = grid->point_index(p);
    for (int a = 0; a < axes; ++a) coords[a] = idx[a] * h;
    out.values_[p] = fn(std::span<const double>(coords.data(), axes));
  }
  return out;
}

bool ScalarField::all_finite() const {
  for (double v : values_)
    if (!std::isfinite(v)) return false;
  return true;
}

namespace {

template <class Op>
ScalarField zip(const ScalarField& a, const ScalarField& b, Op op) {
  ScalarField out(a.grid_ptr());
  auto dst = out.mutable_values();
  const auto x = a.values();
  const auto y = b.values();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = op(x[i], y[i]);
  return out;
}

}  // namespace

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return zip(a, b, [](double x, double y) { return x + y; });
}
ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return zip(a, b, [](double x, double y) { return x - y; });
}
ScalarField hadamard(const ScalarField& a, const ScalarField& b) {
  return zip(a, b, [](double x, double y) { return x * y; });
}

ScalarField operator*(double s, const ScalarField& a) {
  return map(a, [s](double x) { return s * x; });
}

ScalarField operator+(const ScalarField& a, double c) {
  return map(a, [c](double x) { return x + c; });
}

ScalarField map(const ScalarField& a, const std::function<double(double)>& fn) {
  ScalarField out(a.grid_ptr());
  auto dst = out.mutable_values();
  const auto src = a.values();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = fn(src[i]);
  return out;
}

ComplexGradient ComplexGradient::conjugate() const {
  ComplexGradient out = *this;
  for (auto& comp : out.im)
    for (double& v : comp) v = -v;
  return out;
}

HermitianField HermitianField::zeros(GridPtr grid) {
  HermitianField h;
  const std::size_t size = grid->size();
  h.diag[0].assign(size, 0.0);
  if (grid->n() == 2) {
    h.diag[1].assign(size, 0.0);
    h.off_re.assign(size, 0.0);
    h.off_im.assign(size, 0.0);
  }
  h.grid = std::move(grid);
  return h;
}

HermitianField HermitianField::identity(GridPtr grid) {
  HermitianField h = zeros(std::move(grid));
  for (int j = 0; j < h.n(); ++j) h.diag[j].assign(h.size(), 1.0);
  return h;
}

std::array<std::complex<double>, 4> HermitianField::at(std::size_t point) const {
  std::array<std::complex<double>, 4> m{};
  if (n() == 1) {
    m[0] = diag[0][point];
    return m;
  }
  const std::complex<double> c(off_re[point], off_im[point]);
  m[0] = diag[0][point];
  m[1] = c;
  m[2] = std::conj(c);
  m[3] = diag[1][point];
  return m;
}

ScalarField HermitianField::trace() const {
  ScalarField out(grid);
  auto dst = out.mutable_values();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = diag[0][i];
    if (n() == 2) dst[i] += diag[1][i];
  }
  return out;
}

HermitianField operator+(const HermitianField& a, const HermitianField& b) {
  HermitianField out = a;
  auto add = [](std::vector<double>& x, const std::vector<double>& y) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
  };
  add(out.diag[0], b.diag[0]);
  if (a.n() == 2) {
    add(out.diag[1], b.diag[1]);
    add(out.off_re, b.off_re);
    add(out.off_im, b.off_im);
  }
  return out;
}

DetMinEig det_min_eig(const HermitianField& h) {
  DetMinEig out;
  if (h.n() == 1) {
    out.det = h.diag[0];
    out.min_eig = h.diag[0];
    return out;
  }
  out.det.resize(h.size());
  out.min_eig.resize(h.size());
  simd::active().herm2_det_mineig(h.diag[0].data(), h.diag[1].data(), h.off_re.data(),
                                  h.off_im.data(), out.det.data(), out.min_eig.data(), h.size());
  return out;
}

ScalarField inverse_trace(const HermitianField& metric, const HermitianField& h) {
  ScalarField out(metric.grid);
  auto dst = out.mutable_values();
  const auto& k = simd::active();
  if (metric.n() == 1) {
    k.herm1_inverse_trace(metric.diag[0].data(), h.diag[0].data(), dst.data(), dst.size());
  } else {
    k.herm2_inverse_trace(metric.diag[0].data(), metric.diag[1].data(), metric.off_re.data(),
                          metric.off_im.data(), h.diag[0].data(), h.diag[1].data(),
                          h.off_re.data(), h.off_im.data(), dst.data(), dst.size());
  }
  return out;
}

ScalarField contract_gradients(const HermitianField& metric, const ComplexGradient& a,
                               const ComplexGradient& b) {
  ScalarField out(metric.grid);
  auto dst = out.mutable_values();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    if (metric.n() == 1) {
      dst[i] = (a.re[0][i] * b.re[0][i] + a.im[0][i] * b.im[0][i]) / metric.diag[0][i];
      continue;
    }
    // Re(b^H G^{-1} a) with G = [[p, c], [conj(c), q]].
    const double p = metric.diag[0][i];
    const double q = metric.diag[1][i];
    const std::complex<double> c(metric.off_re[i], metric.off_im[i]);
    const std::complex<double> a1 = a.at(i, 0), a2 = a.at(i, 1);
    const std::complex<double> b1 = b.at(i, 0), b2 = b.at(i, 1);
    const double det = p * q - std::norm(c);
    const std::complex<double> v1 = q * a1 - c * a2;
    const std::complex<double> v2 = -std::conj(c) * a1 + p * a2;
    dst[i] = std::real(std::conj(b1) * v1 + std::conj(b2) * v2) / det;
  }
  return out;
}

}  // namespace cma
