#include <doctest.h>

#include <cmath>

#include "bmforge/certificates.hpp"

using namespace bmforge;

namespace {
Vec v2(double a, double b) { return Vec(Eigen::Vector2d(a, b)); }
}  // namespace

TEST_CASE("torsion in one dimension") {
  const auto t = solve_torsion_1d(LogConcaveMeasure::lebesgue(1), 0.0, 1.0, 1.0, 1.0, 200);
  CHECK(t.C == doctest::Approx(2.0).epsilon(1e-12));
  double worst1 = 0.0;
  for (std::size_t k = 0; k < t.field.nodes(); ++k) {
    const double x = t.field.point(k)[0];
    worst1 = std::max(worst1, std::abs(t.field.u[k] - t.field.u[0] - (x * x - x)));
  }
  CHECK(worst1 <= 1e-12);
  CHECK(t.residual <= 1e-6);
  CHECK(t.boundary_defect <= 1e-3);

  // Gaussian on [-1,1] with unit outward flux: C = 2 rho(1) / int rho.
  const auto g = LogConcaveMeasure::gaussian(1);
  const auto tg = solve_torsion(g, ConvexBody::box(Vec::Ones(1)), [](const Vec&, const Vec&) { return 1.0; });
  const double Z = std::sqrt(2 * M_PI) * std::erf(1 / std::sqrt(2.0));
  CHECK(tg.C == doctest::Approx(2 * std::exp(-0.5) / Z).epsilon(1e-10));
  CHECK(tg.residual <= 1e-5);
  CHECK(tg.field.even);
}

TEST_CASE("torsion in two dimensions") {
  const auto leb = LogConcaveMeasure::lebesgue(2);
  const auto t = solve_torsion(leb, ConvexBody::box(v2(1.0, 0.5)), [](const Vec& x, const Vec& n) { return x.dot(n); }, 32);
  CHECK(t.C == doctest::Approx(2.0).epsilon(1e-12));
  // u = |x|^2 / 2 up to a constant.
  const double u0 = t.field.u[0] - 0.5 * t.field.point(0).squaredNorm();
  double worst = 0.0;
  for (std::size_t k = 0; k < t.field.nodes(); ++k)
    worst = std::max(worst, std::abs(t.field.u[k] - u0 - 0.5 * t.field.point(k).squaredNorm()));
  CHECK(worst <= 1e-8);
  CHECK(t.residual <= 1e-6);
  const auto kp = check_keyprop(leb, t.field, 0.5);
  CHECK(kp.p_certified == doctest::Approx(0.5).epsilon(1e-6));

  const auto g = LogConcaveMeasure::gaussian(2);
  const auto tg = solve_torsion(g, ConvexBody::box(v2(1.0, 1.0)), [](const Vec&, const Vec&) { return 1.0; }, 64);
  CHECK(tg.field.even);
  CHECK(tg.residual <= 1e-2);
  const auto kg = check_keyprop(g, tg.field, 0.5);
  CHECK(kg.pass);
  CHECK(kg.p_certified >= 0.5);
}

TEST_CASE("key inequality for analytic functions") {
  const auto leb = LogConcaveMeasure::lebesgue(2);
  const auto u = half_square_norm(2);
  const auto r = check_keyprop(leb, ConvexBody::box(v2(1.0, 0.3)), *u, 0.5);
  CHECK(r.p_certified == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(r.var_Lu == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.pass);
  // A linear u on the Gaussian: lhs = E theta^2 = 1, Lu = -x1 so mean 0, Var = E x1^2.
  const auto g = LogConcaveMeasure::gaussian(2);
  const auto lin = linear_function(v2(1.0, 0.0));
  const auto w = check_keyprop(g, ConvexBody::whole_space(2), *lin, 0.5);
  CHECK(w.lhs == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(w.var_Lu == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(w.slack) <= 1e-8);
}

TEST_CASE("prop1 is an equality at u = V") {
  Mat T(2, 2);
  T << 1.0, 0.4, 0.0, 0.7;
  for (const auto& mu : {LogConcaveMeasure::gaussian(2), LogConcaveMeasure::pushforward(LogConcaveMeasure::gaussian(2), T)}) {
    const auto u = potential_function(mu.potential_ptr());
    const auto r = check_prop1(mu, ConvexBody::box(v2(1.0, 0.6)), *u);
    CHECK(std::abs(r.slack) <= 1e-7 + 3 * r.error);
    CHECK(r.pass);
  }
  std::mt19937_64 rng(11);
  const auto g = LogConcaveMeasure::gaussian(2);
  for (int t = 0; t < 5; ++t) {
    const auto u = random_polynomial(rng, 2, 4, Parity::Any, 2);
    CHECK(check_prop1(g, ConvexBody::lp_ball(2, 2.0, 1.2), *u).pass);
  }
  const auto sq = half_square_norm(2);
  CHECK(check_prop1(LogConcaveMeasure::radial_p(2, 4.0), ConvexBody::box(v2(1, 1)), *sq).divergent);
  CHECK_THROWS(check_prop1(LogConcaveMeasure::product_p(2, 4.0), ConvexBody::box(v2(1, 1)), *sq));
}

TEST_CASE("prop2 and the measure bound") {
  const auto g = LogConcaveMeasure::gaussian(2);
  const auto K = ConvexBody::box(v2(1.0, 1.0));
  const auto u = half_square_norm(2);
  const auto r = check_prop2(g, K, K, *u, 1.0);
  CHECK(r.pass);
  CHECK(r.denominator > 0.0);
  // lhs = ||I||^2 = 2; a = 2 - E|x|^2; denominator = 2 + E|x|^2 - 2E|x|^2.
  const double m = std::erf(1 / std::sqrt(2.0));
  const double ex2 = 1.0 - std::sqrt(2 / M_PI) * std::exp(-0.5) / m;
  CHECK(r.lhs == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(r.rhs == doctest::Approx(std::pow(2 - 2 * ex2, 2) / (2 - 2 * ex2)).epsilon(1e-9));

  const auto b = meas_simple_bound(LogConcaveMeasure::gaussian(1), ConvexBody::box(Vec::Ones(1)));
  CHECK(b.k1 == doctest::Approx(1.0));
  CHECK(b.bound == doctest::Approx(1.0 / (1.0 - ex2)).epsilon(1e-9));
  CHECK(b.bound == doctest::Approx(1.4106861346424477).epsilon(1e-9));
  const auto inf = meas_simple_bound(g, ConvexBody::whole_space(2));
  CHECK(inf.infinite);
  CHECK_THROWS(meas_simple_bound(LogConcaveMeasure::lebesgue(2), K));
}

TEST_CASE("scaled sublevel body and gradient image") {
  const auto g = LogConcaveMeasure::gaussian(2);
  const auto s = sublevel_body(g, 10.0);
  CHECK(s.body.radial_function(v2(1, 0)) == doctest::Approx(0.5 * std::sqrt(40.0)).epsilon(1e-9));
  CHECK(s.measure == doctest::Approx(1 - std::exp(-5.0)).epsilon(1e-8));
  CHECK(s.measure >= 0.9);
  CHECK(s.ball_contained);
  CHECK(s.max_gradient <= s.gradient_bound);
  CHECK(s.max_gradient == doctest::Approx(0.5 * std::sqrt(40.0)).epsilon(1e-9));

  const auto c = check_gradient_image(g.potential_ptr(), 1.0, 1.0, 0.5, 2000);
  CHECK(c.pass);
  CHECK(c.bound == doctest::Approx(2.0));
  CHECK(c.max_value <= 1.0 + 1e-9);
  CHECK(c.max_value >= 0.9);
  const auto p = LogConcaveMeasure::product_p(3, 1.5);
  CHECK(check_gradient_image(p.potential_ptr(), 3.0, 3.0, 1.0 / 3.0, 2000).pass);
}
