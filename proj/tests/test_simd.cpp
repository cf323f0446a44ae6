#include <doctest.h>

#include <random>
#include <vector>

#include "bmforge/simd/kernels.hpp"

using namespace bmforge::simd;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> U(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = U(rng);
  return v;
}

}  // namespace

TEST_CASE("simd dispatch honors the forced scalar path") {
  const Kernels& k = kernels();
  const char* env = std::getenv("BMFORGE_SIMD");
  if (env && std::string(env) == "scalar") CHECK(k.isa == Isa::Scalar);
  CHECK(scalar_kernels().isa == Isa::Scalar);
}

TEST_CASE("simd kernels agree with the scalar reference") {
  const Kernels* fast = avx2_kernels();
  if (!fast) {
    MESSAGE("avx2 unavailable; equivalence test skipped");
    return;
  }
  const Kernels& ref = scalar_kernels();
  std::mt19937_64 rng(11);
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 16u, 33u, 1001u}) {
    const auto x = random_vec(rng, n), y = random_vec(rng, n);
    CHECK(fast->dot(x.data(), y.data(), n) == doctest::Approx(ref.dot(x.data(), y.data(), n)).epsilon(1e-13));

    auto y1 = y, y2 = y;
    ref.axpy(0.37, x.data(), y1.data(), n);
    fast->axpy(0.37, x.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-15));

    y1 = y, y2 = y;
    ref.xpay(x.data(), -1.3, y1.data(), n);
    fast->xpay(x.data(), -1.3, y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-15));

    const auto keys = random_vec(rng, n, 0.0, 2.0);
    CHECK(fast->masked_sum(x.data(), keys.data(), 1.0, n) ==
          doctest::Approx(ref.masked_sum(x.data(), keys.data(), 1.0, n)).epsilon(1e-13));

    const auto ax = random_vec(rng, 6), ay = random_vec(rng, 6);
    std::vector<double> g1(n), g2(n);
    ref.halfspace_gauge_row(ax.data(), ay.data(), 6, x.data(), 0.25, g1.data(), n);
    fast->halfspace_gauge_row(ax.data(), ay.data(), 6, x.data(), 0.25, g2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(g1[i] == doctest::Approx(g2[i]).epsilon(1e-15));
  }
}

TEST_CASE("simd stencil matches the scalar reference on a padded grid") {
  const Kernels* fast = avx2_kernels();
  const Kernels& ref = scalar_kernels();
  std::mt19937_64 rng(5);
  const std::size_t nx = 13, ny = 9, stride = nx + 2, total = stride * (ny + 2);
  const auto d = random_vec(rng, total, 1.0, 5.0), e = random_vec(rng, total, 0.0, 1.0),
             no = random_vec(rng, total, 0.0, 1.0), x = random_vec(rng, total);
  std::vector<double> y1(total, 0.0), y2(total, 0.0);
  const std::size_t begin = stride + 1, end = total - stride - 1;
  ref.stencil5(d.data(), e.data(), no.data(), x.data(), y1.data(), stride, begin, end);
  // Independent oracle written out directly.
  for (std::size_t i = begin; i < end; ++i) {
    const double expect = d[i] * x[i] - e[i] * x[i + 1] - e[i - 1] * x[i - 1] -
                          no[i] * x[i + stride] - no[i - stride] * x[i - stride];
    CHECK(y1[i] == doctest::Approx(expect).epsilon(1e-14));
  }
  if (fast) {
    fast->stencil5(d.data(), e.data(), no.data(), x.data(), y2.data(), stride, begin, end);
    for (std::size_t i = begin; i < end; ++i) CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-14));
  }
}
