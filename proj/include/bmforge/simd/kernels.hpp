#pragma once

// Data-parallel inner loops shared by the grid quadrature backend and the
// weighted-Neumann solvers. Every kernel has a scalar reference version; wider
// variants are selected once at startup and must agree with it to rounding.

#include <cstddef>
#include <string_view>

namespace bmforge::simd {

enum class Isa { Scalar, Avx2 };

struct Kernels {
  Isa isa;
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // y = x + alpha * y
  void (*xpay)(const double* x, double alpha, double* y, std::size_t n);
  // out[j] = max_i (ax[i] * xs[j] + ay[i] * y), i < m. With (ax, ay) the
  // halfspace normals divided by their offsets this is the polygon gauge.
  void (*halfspace_gauge_row)(const double* ax, const double* ay, std::size_t m,
                              const double* xs, double y, double* out,
                              std::size_t count);
  // sum of weights[j] over j with keys[j] <= threshold
  double (*masked_sum)(const double* weights, const double* keys, double threshold,
                       std::size_t n);
  // Symmetric 5-point operator on a padded grid with row stride `stride`:
  // y[i] = diag[i] x[i] - east[i] x[i+1] - east[i-1] x[i-1]
  //        - north[i] x[i+stride] - north[i-stride] x[i-stride]
  // for i in [begin, end). Requires begin >= stride and end + stride <= size.
  void (*stencil5)(const double* diag, const double* east, const double* north,
                   const double* x, double* y, std::size_t stride, std::size_t begin,
                   std::size_t end);
};

const Kernels& scalar_kernels();
/// nullptr when the variant was not compiled in or the CPU lacks AVX2/FMA.
const Kernels* avx2_kernels();
/// The dispatched table. BMFORGE_SIMD=scalar in the environment forces the
/// reference kernels.
const Kernels& kernels();

std::string_view isa_name(Isa isa);

}  // namespace bmforge::simd
