#include "kernels_impl.hpp"

namespace bmforge::simd::detail::scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void xpay(const double* x, double alpha, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + alpha * y[i];
}

void halfspace_gauge_row(const double* ax, const double* ay, std::size_t m,
                         const double* xs, double y, double* out, std::size_t count) {
  for (std::size_t j = 0; j < count; ++j) {
    double g = ax[0] * xs[j] + ay[0] * y;
    for (std::size_t i = 1; i < m; ++i) {
      const double v = ax[i] * xs[j] + ay[i] * y;
      if (v > g) g = v;
    }
    out[j] = g;
  }
}

double masked_sum(const double* weights, const double* keys, double threshold,
                  std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    if (keys[i] <= threshold) s += weights[i];
  return s;
}

void stencil5(const double* diag, const double* east, const double* north, const double* x,
              double* y, std::size_t stride, std::size_t begin, std::size_t end) {
  for (std::size_t i = begin; i < end; ++i) {
    y[i] = diag[i] * x[i] - east[i] * x[i + 1] - east[i - 1] * x[i - 1] -
           north[i] * x[i + stride] - north[i - stride] * x[i - stride];
  }
}

}  // namespace bmforge::simd::detail::scalar
