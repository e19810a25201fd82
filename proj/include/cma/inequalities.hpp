#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace cma {

/// One point in a diagonalizing frame: g = I, phi_{i jbar} = diag(lambda).
struct InequalitySample {
  int n = 2;
  std::vector<double> lambda;                     // 1 + lambda_i > 0
  std::vector<std::complex<double>> grad;         // phi_i
  std::vector<std::complex<double>> second;       // phi_{ki}, row-major n x n, symmetric
  double a_prime = 1.0;
};

struct SosResult {
  double lhs = 0.0;  // three-term expansion
  double rhs = 0.0;  // factored sum of squares
  double relative_error = 0.0;
  double margin = 0.0;  // rhs, which must be >= 0
};

SosResult check_sos_3_7(const InequalitySample& sample);

/// sum 1/(1+lambda_i) - (n + sum lambda_i)^{1/(n-1)} exp(-F/(n-1)) with
/// e^F = prod (1 + lambda_i). Throws InvalidDimension for n < 2.
double check_amgm_3_12(const std::vector<double>& lambda);

/// x/y + s^{1/(n-1)} - n (n-1)^{(1-n)/n} x^{1/n}. Throws ConstraintViolated
/// when y > s and InvalidDimension for n < 2.
double check_elementary_3_13(double x, double y, double s, int n);

struct YoungConstant {
  double numeric = 0.0;      // golden-section maximum of s - eps s^{n/(n-1)}
  double closed_form = 0.0;  // ((n-1)/(n eps))^{n-1} / n
};

YoungConstant young_constant(double eps, int n);

struct SuiteStats {
  std::string name;
  int n = 0;
  long samples = 0;
  double min_margin = 0.0;
  double max_relative_error = 0.0;
  bool passed = false;
};

struct SuiteOptions {
  long samples = 100000;
  std::uint64_t seed = 1;
  int threads = 1;
  int block = 10000;  // samples per independently seeded block
};

/// Randomized suites. Each block of samples draws from its own generator
/// seeded by (seed, check id, n, block index), so results do not depend on
/// the thread count.
SuiteStats run_sos_suite(int n, const SuiteOptions& opts);
SuiteStats run_amgm_suite(int n, const SuiteOptions& opts);
SuiteStats run_elementary_suite(int n, const SuiteOptions& opts);

std::vector<SuiteStats> run_all_suites(const SuiteOptions& opts);

}  // namespace cma
