#include <doctest.h>

#include <cmath>
#include <random>

#include "bmforge/measures.hpp"

using namespace bmforge;

namespace {
Vec v2(double a, double b) { return Vec(Eigen::Vector2d(a, b)); }
}  // namespace

TEST_CASE("log density examples") {
  CHECK(LogConcaveMeasure::gaussian(1).log_density(Vec::Zero(1)) == doctest::Approx(-0.5 * std::log(2 * M_PI)));
  CHECK(LogConcaveMeasure::lebesgue(2).log_density(v2(3, 4)) == 0.0);
  const auto mu = LogConcaveMeasure::product_p(2, 1.0);
  CHECK(mu.log_density(v2(1, 1)) == doctest::Approx(-2.0 - std::log(4.0)));
}

TEST_CASE("normalizing constants") {
  CHECK(normalizing_constant(LogConcaveMeasure::gaussian(2)) == doctest::Approx(2 * M_PI).epsilon(1e-12));
  CHECK(normalizing_constant(LogConcaveMeasure::product_p(1, 1.0)) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(normalizing_constant(LogConcaveMeasure::radial_p(2, 2.0)) == doctest::Approx(2 * M_PI).epsilon(1e-10));
  CHECK_THROWS_AS(normalizing_constant(LogConcaveMeasure::lebesgue(2)), Error);
  // Closed form: Z = n omega_n int t^{n-1} e^{-t^p/p} = n omega_n p^{n/p-1} Gamma(n/p).
  for (int n : {1, 2, 3})
    for (double p : {1.0, 1.5, 4.0}) {
      const double oracle = std::exp(log_unit_sphere_area(n) + (n / p - 1) * std::log(p) + std::lgamma(n / p));
      CHECK(normalizing_constant(LogConcaveMeasure::radial_p(n, p)) == doctest::Approx(oracle).epsilon(1e-8));
    }
}

TEST_CASE("bregman terms") {
  auto b = bregman_terms(LogConcaveMeasure::gaussian(2), v2(1, 1));
  CHECK(b.grad_sq == doctest::Approx(2));
  CHECK(b.grad_dot_x == doctest::Approx(2));
  CHECK(b.laplacian == doctest::Approx(2));
  CHECK(b.LV == doctest::Approx(0));
  b = bregman_terms(LogConcaveMeasure::gaussian(2), v2(3, 4));
  CHECK(b.grad_sq == doctest::Approx(25));
  CHECK(b.grad_dot_x == doctest::Approx(25));
  b = bregman_terms(LogConcaveMeasure::radial_p(2, 1.0), v2(0, 2));
  CHECK(b.grad_sq == doctest::Approx(1));
  CHECK(b.grad_dot_x == doctest::Approx(2));
  b = bregman_terms(LogConcaveMeasure::product_p(2, 1.0), v2(0, 2));
  CHECK(b.one_sided);
}

TEST_CASE("measure invariants: evenness, convexity and derivative consistency") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> N(0.0, 1.0);
  Mat T(2, 2);
  T << 2.0, 0.3, 0.3, 0.7;
  const std::vector<LogConcaveMeasure> family = {
      LogConcaveMeasure::gaussian(2), LogConcaveMeasure::product_p(2, 1.5), LogConcaveMeasure::radial_p(2, 1.5),
      LogConcaveMeasure::radial_p(2, 4.0), LogConcaveMeasure::pushforward(LogConcaveMeasure::gaussian(2), T)};
  for (const auto& mu : family) {
    for (int s = 0; s < 20; ++s) {
      const Vec x = v2(N(rng), N(rng)), y = v2(N(rng), N(rng));
      CHECK(mu.V(-x) == doctest::Approx(mu.V(x)).epsilon(1e-10));
      CHECK(mu.V(0.5 * (x + y)) <= 0.5 * (mu.V(x) + mu.V(y)) + 1e-9);
      const double h = 1e-6;
      const Vec g = mu.grad_V(x);
      const Mat H = mu.hessian_V(x);
      for (int i = 0; i < 2; ++i) {
        const Vec e = h * Vec::Unit(2, i);
        const double fd = (mu.V(x + e) - mu.V(x - e)) / (2 * h);
        CHECK(g[i] == doctest::Approx(fd).epsilon(1e-5));
        const Vec fdg = (mu.grad_V(x + e) - mu.grad_V(x - e)) / (2 * h);
        for (int j = 0; j < 2; ++j) CHECK(H(j, i) == doctest::Approx(fdg[j]).epsilon(1e-4).scale(1e-3));
      }
    }
  }
}

TEST_CASE("samplers reproduce second moments") {
  for (const auto& mu : {LogConcaveMeasure::gaussian(2), LogConcaveMeasure::product_p(2, 1.0),
                         LogConcaveMeasure::radial_p(2, 1.0)}) {
    std::mt19937_64 rng(1);
    double s = 0.0;
    const int N = 200000;
    for (int i = 0; i < N; ++i) s += mu.sample(rng).squaredNorm();
    s /= N;
    // E|x|^2: Gaussian 2; ProductP(1) 2 * Gamma(3) = 4 (Laplace); RadialP(1) Gamma(4)/Gamma(2) = 6.
    const double expect = mu.family() == Family::Gaussian ? 2.0 : (mu.family() == Family::ProductP ? 4.0 : 6.0);
    CHECK(s == doctest::Approx(expect).epsilon(0.02));
  }
}
