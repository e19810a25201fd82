#pragma once

#include <cstdint>
#include <string>

#include "cma/kahler_background.hpp"

namespace cma {

enum class SobolevVariant { TwoNorm, OneNorm };

const char* to_string(SobolevVariant v);

struct SobolevProbe {
  SobolevVariant variant = SobolevVariant::TwoNorm;
  int trials = 0;
  double lower_bound = 0.0;  // running max of the defining ratio
  std::string best_class;    // "constant", "bump" or "random"
};

/// Defining ratio of each Sobolev inequality for one trial function:
///   two-norm: (int |f|^{2n/(n-1)})^{(n-1)/n} / (int |grad f|^2 + int f^2)
///   one-norm: ||f||_{2n/(2n-1)} / int (|grad f| + |f|)
double sobolev_ratio(const ScalarField& f, const KahlerBackground& bg, SobolevVariant variant);

/// Maximizes the ratio over the constant function, periodic Gaussian bumps
/// of width about 0.1 and random band-limited fields (bandwidth 3).
/// Throws ValidationError for trials < 100 and InvalidDimension for the
/// two-norm variant at n = 1.
SobolevProbe sobolev_probe(const KahlerBackground& bg, SobolevVariant variant, int trials,
                           std::uint64_t seed);

}  // namespace cma
