#include <immintrin.h>

#include "kernels_impl.hpp"

namespace bmforge::simd::detail::avx2 {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void xpay(const double* x, double alpha, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) y[i] = x[i] + alpha * y[i];
}

void halfspace_gauge_row(const double* ax, const double* ay, std::size_t m,
                         const double* xs, double y, double* out, std::size_t count) {
  std::size_t j = 0;
  for (; j + 4 <= count; j += 4) {
    const __m256d vx = _mm256_loadu_pd(xs + j);
    __m256d g = _mm256_fmadd_pd(_mm256_set1_pd(ax[0]), vx, _mm256_set1_pd(ay[0] * y));
    for (std::size_t i = 1; i < m; ++i) {
      const __m256d v = _mm256_fmadd_pd(_mm256_set1_pd(ax[i]), vx, _mm256_set1_pd(ay[i] * y));
      g = _mm256_max_pd(g, v);
    }
    _mm256_storeu_pd(out + j, g);
  }
  for (; j < count; ++j) {
    double g = ax[0] * xs[j] + ay[0] * y;
    for (std::size_t i = 1; i < m; ++i) {
      const double v = ax[i] * xs[j] + ay[i] * y;
      if (v > g) g = v;
    }
    out[j] = g;
  }
}

double masked_sum(const double* weights, const double* keys, double threshold, std::size_t n) {
  const __m256d t = _mm256_set1_pd(threshold);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d mask = _mm256_cmp_pd(_mm256_loadu_pd(keys + i), t, _CMP_LE_OQ);
    acc = _mm256_add_pd(acc, _mm256_and_pd(mask, _mm256_loadu_pd(weights + i)));
  }
  double s = hsum(acc);
  for (; i < n; ++i)
    if (keys[i] <= threshold) s += weights[i];
  return s;
}

void stencil5(const double* diag, const double* east, const double* north, const double* x,
              double* y, std::size_t stride, std::size_t begin, std::size_t end) {
  std::size_t i = begin;
  for (; i + 4 <= end; i += 4) {
    __m256d acc = _mm256_mul_pd(_mm256_loadu_pd(diag + i), _mm256_loadu_pd(x + i));
    acc = _mm256_fnmadd_pd(_mm256_loadu_pd(east + i), _mm256_loadu_pd(x + i + 1), acc);
    acc = _mm256_fnmadd_pd(_mm256_loadu_pd(east + i - 1), _mm256_loadu_pd(x + i - 1), acc);
    acc = _mm256_fnmadd_pd(_mm256_loadu_pd(north + i), _mm256_loadu_pd(x + i + stride), acc);
    acc = _mm256_fnmadd_pd(_mm256_loadu_pd(north + i - stride), _mm256_loadu_pd(x + i - stride),
                           acc);
    _mm256_storeu_pd(y + i, acc);
  }
  for (; i < end; ++i) {
    y[i] = diag[i] * x[i] - east[i] * x[i + 1] - east[i - 1] * x[i - 1] -
           north[i] * x[i + stride] - north[i - stride] * x[i - stride];
  }
}

}  // namespace bmforge::simd::detail::avx2
