#include <cstdlib>
#include <string_view>

#include "cma/simd/kernels.hpp"

namespace cma::simd {

#if defined(__x86_64__) || defined(__i386__)
extern const KernelTable kAvx2Table;
#endif

const KernelTable* avx2_kernels() {
#if defined(__x86_64__) || defined(__i386__)
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  return supported ? &kAvx2Table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable* table = [] {
    const char* env = std::getenv("CMA_SIMD");
    const std::string_view request = env ? env : "";
    if (request == "scalar") return &scalar_kernels();
    if (const KernelTable* wide = avx2_kernels()) return wide;
    return &scalar_kernels();
  }();
  return *table;
}

}  // namespace cma::simd
