#include "cma/spectral.hpp"

#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

namespace cma {
namespace {

constexpr int kMaxOrder = 4;

// Per-axis multiplier tables indexed [axis][order][spectral index].
struct MultiplierTable {
  std::array<std::array<std::vector<std::complex<double>>, kMaxOrder + 1>, TorusGrid::kMaxAxes> t;

  explicit MultiplierTable(const TorusGrid& grid) {
    for (int a = 0; a < grid.axes(); ++a)
      for (int o = 0; o <= kMaxOrder; ++o) {
        auto& row = t[a][o];
        row.resize(grid.spectral_extent(a));
        for (int k = 0; k < static_cast<int>(row.size()); ++k) row[k] = axis_multiplier(grid, a, k, o);
      }
  }
};

// Visits every half-spectrum coefficient with its per-axis indices.
template <class Fn>
void for_each_mode(const TorusGrid& grid, Fn&& fn) {
  const int axes = grid.axes();
  std::array<int, TorusGrid::kMaxAxes> idx{};
  std::array<int, TorusGrid::kMaxAxes> extent{};
  for (int a = 0; a < axes; ++a) extent[a] = grid.spectral_extent(a);
  for (std::size_t flat = 0; flat < grid.spectrum_size(); ++flat) {
    fn(flat, idx);
    for (int a = axes - 1; a >= 0; --a) {
      if (++idx[a] < extent[a]) break;
      idx[a] = 0;
    }
  }
}

using Multipliers = std::vector<std::complex<double>>;

// Multiplier arrays depend only on (n, m) and the operator, and the solver
// applies the same handful of operators thousands of times.
class MultiplierCache {
 public:
  template <class Build>
  std::shared_ptr<const Multipliers> get(const TorusGrid& grid, const std::string& op, Build&& build) {
    const std::string key = std::to_string(grid.n()) + "/" + std::to_string(grid.m()) + "/" + op;
    {
      std::lock_guard lock(mutex_);
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    auto table = std::make_shared<const Multipliers>(build());
    std::lock_guard lock(mutex_);
    return cache_.try_emplace(key, std::move(table)).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<const Multipliers>> cache_;
};

MultiplierCache& cache() {
  static MultiplierCache c;
  return c;
}

std::string operator_key(std::span<const Monomial> terms) {
  std::string key = "real";
  for (const Monomial& t : terms) {
    char buf[sizeof(double)];
    std::memcpy(buf, &t.coef, sizeof buf);
    key.append(buf, sizeof buf);
    for (int o : t.orders) key.push_back(static_cast<char>('0' + o));
  }
  return key;
}

ScalarField apply_multipliers(const Spectrum& spec, const Multipliers& mult) {
  std::vector<std::complex<double>> out(spec.coeffs.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double a = mult[i].real(), b = mult[i].imag();
    const double c = spec.coeffs[i].real(), d = spec.coeffs[i].imag();
    out[i] = {a * c - b * d, a * d + b * c};
  }
  ScalarField f(spec.grid);
  spec.grid->inverse_consuming(out, f.mutable_values());
  return f;
}

}  // namespace

Spectrum Spectrum::of(const ScalarField& f) {
  Spectrum s{f.grid_ptr(), std::vector<std::complex<double>>(f.grid().spectrum_size())};
  f.grid().forward(f.values(), s.coeffs);
  return s;
}

std::complex<double> axis_multiplier(const TorusGrid& grid, int axis, int index, int order) {
  if (order == 0) return 1.0;
  if (order % 2 == 1 && grid.is_nyquist(index)) return 0.0;
  const double kappa = 2.0 * std::numbers::pi * grid.frequency(axis, index);
  std::complex<double> m = 1.0;
  for (int o = 0; o < order; ++o) m *= std::complex<double>(0.0, kappa);
  return m;
}

ScalarField apply_real(const Spectrum& spec, std::span<const Monomial> terms) {
  const TorusGrid& grid = *spec.grid;
  const auto mult = cache().get(grid, operator_key(terms), [&] {
    const MultiplierTable table(grid);
    const int axes = grid.axes();
    Multipliers out(grid.spectrum_size());
    for_each_mode(grid, [&](std::size_t flat, const std::array<int, TorusGrid::kMaxAxes>& idx) {
      std::complex<double> m = 0.0;
      for (const Monomial& term : terms) {
        std::complex<double> t = term.coef;
        for (int a = 0; a < axes; ++a)
          if (term.orders[a] != 0) t *= table.t[a][term.orders[a]][idx[a]];
        m += t;
      }
      out[flat] = m;
    });
    return out;
  });
  return apply_multipliers(spec, *mult);
}

std::pair<ScalarField, ScalarField> apply_wirtinger(const Spectrum& spec,
                                                    std::span<const Wirtinger> factors) {
  // d/dz = (d/dx - i d/dy) / 2, d/dzbar = (d/dx + i d/dy) / 2. Expand the
  // product into real monomials with complex coefficients.
  using Orders = std::array<int, TorusGrid::kMaxAxes>;
  std::map<Orders, std::complex<double>> expansion{{Orders{}, 1.0}};
  for (const Wirtinger& w : factors) {
    std::map<Orders, std::complex<double>> next;
    const std::complex<double> y_coef(0.0, w.conj ? 0.5 : -0.5);
    for (const auto& [orders, coef] : expansion) {
      Orders ox = orders;
      ++ox[2 * w.index];
      next[ox] += 0.5 * coef;
      Orders oy = orders;
      ++oy[2 * w.index + 1];
      next[oy] += y_coef * coef;
    }
    expansion = std::move(next);
  }
  std::vector<Monomial> re_terms, im_terms;
  for (const auto& [orders, coef] : expansion) {
    if (coef.real() != 0.0) re_terms.push_back({orders, coef.real()});
    if (coef.imag() != 0.0) im_terms.push_back({orders, coef.imag()});
  }
  ScalarField re = re_terms.empty() ? ScalarField(spec.grid) : apply_real(spec, re_terms);
  ScalarField im = im_terms.empty() ? ScalarField(spec.grid) : apply_real(spec, im_terms);
  return {std::move(re), std::move(im)};
}

ComplexGradient holomorphic_gradient(const Spectrum& spec) {
  ComplexGradient g;
  g.grid = spec.grid;
  for (int j = 0; j < spec.grid->n(); ++j) {
    const Wirtinger dz{j, false};
    auto [re, im] = apply_wirtinger(spec, std::span(&dz, 1));
    g.re.emplace_back(re.values().begin(), re.values().end());
    g.im.emplace_back(im.values().begin(), im.values().end());
  }
  return g;
}

ComplexGradient holomorphic_gradient(const ScalarField& f) {
  return holomorphic_gradient(Spectrum::of(f));
}

ComplexGradient antiholomorphic_gradient(const ScalarField& f) {
  const Spectrum spec = Spectrum::of(f);
  ComplexGradient g;
  g.grid = spec.grid;
  for (int j = 0; j < spec.grid->n(); ++j) {
    const Wirtinger dzbar{j, true};
    auto [re, im] = apply_wirtinger(spec, std::span(&dzbar, 1));
    g.re.emplace_back(re.values().begin(), re.values().end());
    g.im.emplace_back(im.values().begin(), im.values().end());
  }
  return g;
}

HermitianField mixed_hessian(const Spectrum& spec) {
  HermitianField h = HermitianField::zeros(spec.grid);
  for (int j = 0; j < spec.grid->n(); ++j) {
    const std::array<Wirtinger, 2> f{{{j, false}, {j, true}}};
    auto re = apply_wirtinger(spec, f).first;
    h.diag[j].assign(re.values().begin(), re.values().end());
  }
  if (spec.grid->n() == 2) {
    const std::array<Wirtinger, 2> f{{{0, false}, {1, true}}};
    auto [re, im] = apply_wirtinger(spec, f);
    h.off_re.assign(re.values().begin(), re.values().end());
    h.off_im.assign(im.values().begin(), im.values().end());
  }
  return h;
}

HermitianField mixed_hessian(const ScalarField& f) { return mixed_hessian(Spectrum::of(f)); }

ScalarField real_laplacian(const ScalarField& f) {
  std::vector<Monomial> terms;
  for (int a = 0; a < f.grid().axes(); ++a) {
    Monomial t;
    t.orders[a] = 2;
    terms.push_back(t);
  }
  return apply_real(Spectrum::of(f), terms);
}

ScalarField partial(const ScalarField& f, int axis, int order) {
  Monomial t;
  t.orders[axis] = order;
  return apply_real(Spectrum::of(f), std::span(&t, 1));
}

Spectrum flat_inverse(const Spectrum& rhs, double shift) {
  const TorusGrid& grid = *rhs.grid;
  char buf[sizeof(double)];
  std::memcpy(buf, &shift, sizeof buf);
  const auto inv = cache().get(grid, "inv" + std::string(buf, sizeof buf), [&] {
    const int axes = grid.axes();
    Multipliers out(grid.spectrum_size());
    for_each_mode(grid, [&](std::size_t flat, const std::array<int, TorusGrid::kMaxAxes>& idx) {
      double symbol = shift;
      for (int a = 0; a < axes; ++a) symbol += 0.25 * axis_multiplier(grid, a, idx[a], 2).real();
      out[flat] = symbol == 0.0 ? 0.0 : 1.0 / symbol;
    });
    return out;
  });
  Spectrum out{rhs.grid, std::vector<std::complex<double>>(rhs.coeffs.size())};
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = (*inv)[i].real() * rhs.coeffs[i];
  return out;
}

ScalarField flat_inverse(const ScalarField& rhs, double shift) {
  return to_field(flat_inverse(Spectrum::of(rhs), shift));
}

ScalarField to_field(const Spectrum& spec) {
  ScalarField f(spec.grid);
  spec.grid->inverse(spec.coeffs, f.mutable_values());
  return f;
}

}  // namespace cma
