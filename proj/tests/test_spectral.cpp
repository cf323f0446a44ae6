#include <doctest.h>

#include <cmath>

#include "bmforge/spectral.hpp"

using namespace bmforge;

namespace {
Vec v2(double a, double b) { return Vec(Eigen::Vector2d(a, b)); }
}  // namespace

TEST_CASE("poincare constants in one dimension") {
  const auto leb = LogConcaveMeasure::lebesgue(1);
  const auto r = poincare_1d(leb, 0.0, 1.0);
  CHECK(r.C_poin == doctest::Approx(1.0 / M_PI).epsilon(1e-8));
  CHECK(r.convergence < 1e-6);
  const auto g = LogConcaveMeasure::gaussian(1);
  const auto whole = poincare(g, ConvexBody::whole_space(1));
  CHECK(whole.C_poin == doctest::Approx(1.0).epsilon(1e-6));
  const auto even = even_poincare(g, ConvexBody::whole_space(1));
  CHECK(even.C_poin == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
  const auto leb_even = even_poincare(leb, ConvexBody::box(Vec::Ones(1)));
  CHECK(leb_even.C_poin == doctest::Approx(1.0 / M_PI).epsilon(1e-7));
}

TEST_CASE("restricted gaussian on an interval matches a shooting solve") {
  // Neumann problem -u'' + x u' = lambda u on [-1,1] solved by RK4 shooting plus bisection.
  auto shoot = [](double lam) {
    double x = -1.0, u = 1.0, du = 0.0;
    const int N = 4000;
    const double h = 2.0 / N;
    auto f = [&](double xx, double uu, double dd) { return xx * dd - lam * uu; };
    for (int i = 0; i < N; ++i) {
      const double k1u = du, k1d = f(x, u, du);
      const double k2u = du + 0.5 * h * k1d, k2d = f(x + 0.5 * h, u + 0.5 * h * k1u, du + 0.5 * h * k1d);
      const double k3u = du + 0.5 * h * k2d, k3d = f(x + 0.5 * h, u + 0.5 * h * k2u, du + 0.5 * h * k2d);
      const double k4u = du + h * k3d, k4d = f(x + h, u + h * k3u, du + h * k3d);
      u += h / 6 * (k1u + 2 * k2u + 2 * k3u + k4u);
      du += h / 6 * (k1d + 2 * k2d + 2 * k3d + k4d);
      x += h;
    }
    return du;
  };
  double lo = 1.0, hi = 6.0;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (shoot(lo) * shoot(mid) <= 0 ? hi : lo) = mid;
  }
  const auto r = poincare_1d(LogConcaveMeasure::gaussian(1), -1.0, 1.0);
  CHECK(r.lambda1 == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-7));
  CHECK(r.C_poin == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-7));
}

TEST_CASE("poincare constants in two dimensions") {
  const auto leb = LogConcaveMeasure::lebesgue(2);
  const auto sq = poincare(leb, ConvexBody::box(v2(0.5, 0.5)));
  CHECK(sq.C_poin == doctest::Approx(1.0 / M_PI).epsilon(1e-6));
  CHECK(sq.richardson);
  const auto g = LogConcaveMeasure::gaussian(2);
  const auto whole = poincare(g, ConvexBody::whole_space(2));
  CHECK(whole.C_poin == doctest::Approx(1.0).epsilon(1e-4));
  const auto even = even_poincare(g, ConvexBody::whole_space(2));
  CHECK(even.C_poin == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-4));
  // A thin box behaves like its long side.
  const auto thin = poincare(g, ConvexBody::box(v2(1.0, 0.01)));
  CHECK(thin.C_poin == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-4));
  const auto disc = poincare(g, ConvexBody::lp_ball(2, 2.0, 1.5));
  CHECK(!disc.richardson);
  CHECK(disc.C_poin < 1.0);
  CHECK(disc.C_poin > 0.6);
}

TEST_CASE("brascamp lieb on examples") {
  const auto g = LogConcaveMeasure::gaussian(2);
  const auto sq = half_square_norm(2, 2.0);  // |x|^2
  const auto whole = brascamp_lieb_check(g, ConvexBody::whole_space(2), *sq);
  CHECK(whole.lhs == doctest::Approx(4.0).epsilon(1e-8));
  CHECK(whole.rhs == doctest::Approx(8.0).epsilon(1e-8));
  CHECK(whole.pass);
  const auto lin = linear_function(v2(1.0, 0.0));
  const auto eq = brascamp_lieb_check(g, ConvexBody::whole_space(2), *lin);
  CHECK(std::abs(eq.slack) <= 1e-8);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    const auto f = random_polynomial(rng, 2, 4, Parity::Any);
    const auto c = brascamp_lieb_check(LogConcaveMeasure::product_p(2, 1.5), ConvexBody::box(v2(1.0, 0.7)), *f);
    CHECK(c.pass);
  }
  const auto deg = brascamp_lieb_check(LogConcaveMeasure::radial_p(2, 4.0), ConvexBody::box(v2(1, 1)), *lin);
  CHECK(deg.divergent);
  CHECK(std::isinf(deg.rhs));
  CHECK_THROWS(brascamp_lieb_check(LogConcaveMeasure::product_p(2, 4.0), ConvexBody::box(v2(1, 1)), *lin));
  CHECK_THROWS(brascamp_lieb_check(LogConcaveMeasure::lebesgue(2), ConvexBody::box(v2(1, 1)), *lin));
}
