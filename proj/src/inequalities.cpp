#include "cma/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <thread>

#include "cma/errors.hpp"

namespace cma {

SosResult check_sos_3_7(const InequalitySample& s) {
  const int n = s.n;
  const double a = s.a_prime;
  SosResult r;
  double scale = 0.0;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      const double w = 1.0 / (1.0 + s.lambda[i]);
      const std::complex<double> pk = s.grad[k], pi = s.grad[i];
      const std::complex<double> pki = s.second[k * n + i];
      const double t1 = a * a * w * std::norm(pi) * std::norm(pk);
      const double t2 = w * std::norm(pki);
      const double t3 = -a * w * 2.0 * std::real(pi * pk * std::conj(pki));
      r.lhs += t1 + t2 + t3;
      scale += std::fabs(t1) + std::fabs(t2) + std::fabs(t3);
      r.rhs += w * std::norm(a * pi * pk - pki);
    }
  r.relative_error = scale == 0.0 ? 0.0 : std::fabs(r.lhs - r.rhs) / scale;
  r.margin = r.rhs;
  return r;
}

double check_amgm_3_12(const std::vector<double>& lambda) {
  const int n = static_cast<int>(lambda.size());
  if (n < 2) throw Error(ErrorCode::InvalidDimension, "AM-GM check needs n >= 2");
  double lhs = 0.0, trace = 0.0, det = 1.0;
  for (double l : lambda) {
    const double y = 1.0 + l;
    lhs += 1.0 / y;
    trace += y;
    det *= y;
  }
  return lhs - std::pow(trace / det, 1.0 / (n - 1));
}

double check_elementary_3_13(double x, double y, double s, int n) {
  if (n < 2) throw Error(ErrorCode::InvalidDimension, "elementary inequality needs n >= 2");
  if (y > s) throw Error(ErrorCode::ConstraintViolated, "requires y <= s");
  const double lhs = x / y + std::pow(s, 1.0 / (n - 1));
  const double rhs = n * std::pow(n - 1.0, (1.0 - n) / n) * std::pow(x, 1.0 / n);
  return lhs - rhs;
}

YoungConstant young_constant(double eps, int n) {
  if (!(eps > 0.0)) throw Error(ErrorCode::ValidationError, "eps: must be positive");
  if (n < 2) throw Error(ErrorCode::InvalidDimension, "Young constant needs n >= 2");
  const double expo = static_cast<double>(n) / (n - 1);
  auto f = [&](double s) { return s - eps * std::pow(s, expo); };

  // f is concave on [0, inf), positive up to eps^{-(n-1)} and negative after.
  double lo = 0.0, hi = 2.0 * std::pow(eps, -(n - 1.0));
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - invphi * (hi - lo), d = lo + invphi * (hi - lo);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - invphi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + invphi * (hi - lo);
      fd = f(d);
    }
  }
  YoungConstant y;
  y.numeric = std::max({f(lo), f(hi), f(0.5 * (lo + hi))});
  y.closed_form = std::pow((n - 1.0) / (n * eps), n - 1.0) / n;
  return y;
}

namespace {

struct BlockStats {
  double min_margin = std::numeric_limits<double>::infinity();
  double max_rel = 0.0;
};

using BlockFn = std::function<BlockStats(std::mt19937_64&, long)>;

std::mt19937_64 block_rng(std::uint64_t seed, int check, int n, long block) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(check), static_cast<std::uint32_t>(n),
                    static_cast<std::uint32_t>(block)};
  return std::mt19937_64(seq);
}

SuiteStats run_blocks(const std::string& name, int check, int n, const SuiteOptions& opts,
                      const BlockFn& fn) {
  const long blocks = (opts.samples + opts.block - 1) / opts.block;
  std::vector<BlockStats> results(blocks);
  auto worker = [&](int w, int workers) {
    for (long b = w; b < blocks; b += workers) {
      std::mt19937_64 rng = block_rng(opts.seed, check, n, b);
      const long count = std::min<long>(opts.block, opts.samples - b * opts.block);
      results[b] = fn(rng, count);
    }
  };
  const int workers = std::max(1, std::min<int>(opts.threads, static_cast<int>(blocks)));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker, w, workers);
  worker(0, workers);
  for (auto& t : pool) t.join();

  SuiteStats s{name, n, opts.samples, std::numeric_limits<double>::infinity(), 0.0, false};
  for (const BlockStats& b : results) {
    s.min_margin = std::min(s.min_margin, b.min_margin);
    s.max_relative_error = std::max(s.max_relative_error, b.max_rel);
  }
  return s;
}

// 1 + lambda log-uniform on (0.01, 1001).
double draw_lambda(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(std::log(0.01), std::log(1001.0));
  return std::exp(u(rng)) - 1.0;
}

std::complex<double> draw_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const double re = g(rng);
  return {re, g(rng)};
}

}  // namespace

SuiteStats run_sos_suite(int n, const SuiteOptions& opts) {
  SuiteStats s = run_blocks("sos", 0, n, opts, [n](std::mt19937_64& rng, long count) {
    BlockStats b;
    std::uniform_real_distribution<double> ap(1.0, 5.0);
    InequalitySample smp;
    smp.n = n;
    smp.lambda.resize(n);
    smp.grad.resize(n);
    smp.second.resize(n * n);
    for (long c = 0; c < count; ++c) {
      for (int i = 0; i < n; ++i) smp.lambda[i] = draw_lambda(rng);
      for (int i = 0; i < n; ++i) smp.grad[i] = draw_complex(rng);
      for (int k = 0; k < n; ++k)
        for (int i = k; i < n; ++i) smp.second[k * n + i] = smp.second[i * n + k] = draw_complex(rng);
      smp.a_prime = ap(rng);
      const SosResult r = check_sos_3_7(smp);
      b.min_margin = std::min(b.min_margin, r.margin);
      b.max_rel = std::max(b.max_rel, r.relative_error);
    }
    return b;
  });
  s.passed = s.min_margin >= -1e-12 && s.max_relative_error <= 1e-10;
  return s;
}

SuiteStats run_amgm_suite(int n, const SuiteOptions& opts) {
  SuiteStats s = run_blocks("amgm", 1, n, opts, [n](std::mt19937_64& rng, long count) {
    BlockStats b;
    std::vector<double> lambda(n);
    for (long c = 0; c < count; ++c) {
      for (double& l : lambda) l = draw_lambda(rng);
      b.min_margin = std::min(b.min_margin, check_amgm_3_12(lambda));
    }
    return b;
  });
  s.passed = s.min_margin >= -1e-12;
  return s;
}

SuiteStats run_elementary_suite(int n, const SuiteOptions& opts) {
  SuiteStats s = run_blocks("elementary", 2, n, opts, [n](std::mt19937_64& rng, long count) {
    BlockStats b;
    std::uniform_real_distribution<double> lx(std::log(1e-3), std::log(1e3));
    std::uniform_real_distribution<double> ls(std::log(1e-2), std::log(1e3));
    std::uniform_real_distribution<double> frac(0.0, 1.0);
    for (long c = 0; c < count; ++c) {
      const double x = std::exp(lx(rng));
      const double s = std::exp(ls(rng));
      const double y = s * (1.0 - frac(rng));  // (0, s]
      b.min_margin = std::min(b.min_margin, check_elementary_3_13(x, y, s, n));
    }
    return b;
  });
  s.passed = s.min_margin >= -1e-12;
  return s;
}

std::vector<SuiteStats> run_all_suites(const SuiteOptions& opts) {
  std::vector<SuiteStats> out;
  for (int n = 2; n <= 5; ++n) out.push_back(run_sos_suite(n, opts));
  for (int n = 2; n <= 5; ++n) out.push_back(run_amgm_suite(n, opts));
  for (int n = 2; n <= 4; ++n) out.push_back(run_elementary_suite(n, opts));
  return out;
}

}  // namespace cma
