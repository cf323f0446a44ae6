#pragma once

// Internal: raw kernel entry points per ISA. Deliberately free of standard
// library templates so the AVX2 translation unit cannot leak wide instructions
// into inline functions shared with the rest of the program.

#include <cstddef>

namespace bmforge::simd::detail {

#define BMFORGE_DECLARE_KERNELS(ns)                                                   \
  namespace ns {                                                                       \
  double dot(const double* a, const double* b, std::size_t n);                         \
  void axpy(double alpha, const double* x, double* y, std::size_t n);                  \
  void xpay(const double* x, double alpha, double* y, std::size_t n);                  \
  void halfspace_gauge_row(const double* ax, const double* ay, std::size_t m,          \
                           const double* xs, double y, double* out, std::size_t count); \
  double masked_sum(const double* weights, const double* keys, double threshold,       \
                    std::size_t n);                                                    \
  void stencil5(const double* diag, const double* east, const double* north,           \
                const double* x, double* y, std::size_t stride, std::size_t begin,     \
                std::size_t end);                                                      \
  }

BMFORGE_DECLARE_KERNELS(scalar)
BMFORGE_DECLARE_KERNELS(avx2)

#undef BMFORGE_DECLARE_KERNELS

}  // namespace bmforge::simd::detail
