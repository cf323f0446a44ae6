#include <doctest.h>

#include <cmath>

#include "bmforge/gauss_kronrod.hpp"
#include "bmforge/radial.hpp"

#ifdef BMFORGE_HAVE_BOOST
#include <boost/math/quadrature/gauss_kronrod.hpp>
#endif

using namespace bmforge;

TEST_CASE("gauss-kronrod on smooth and kinked integrands") {
  auto r = integrate([](double t) { return std::exp(-t * t / 2); }, -1.0, 1.0);
  CHECK(r.value == doctest::Approx(std::sqrt(2 * M_PI) * 0.6826894921370859).epsilon(1e-13));
  const double kink[] = {0.3};
  r = integrate([](double t) { return std::abs(t - 0.3); }, 0.0, 1.0, {}, kink);
  CHECK(r.value == doctest::Approx(0.045 + 0.245).epsilon(1e-14));
  r = integrate([](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0);
  CHECK(std::abs(r.value - 2.0) <= r.error);
  auto inf = integrate_to_infinity([](double t) { return std::exp(-t); }, 0.0);
  CHECK(inf.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("vector gauss-kronrod matches the scalar path componentwise") {
  auto r = integrate(
      [](double t, double* o) {
        o[0] = std::sin(t);
        o[1] = t * t;
        o[2] = 0.0;
      },
      3, 0.0, M_PI);
  CHECK(r.value[0] == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(r.value[1] == doctest::Approx(M_PI * M_PI * M_PI / 3).epsilon(1e-13));
  CHECK(r.value[2] == 0.0);
  CHECK(r.converged);
}

TEST_CASE("gauss-legendre rule integrates polynomials exactly") {
  const auto g = gauss_legendre(8);
  double s = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * std::pow(g.nodes[i], 14);
  CHECK(s == doctest::Approx(2.0 / 15.0).epsilon(1e-14));
}

TEST_CASE("radial J examples") {
  CHECK(radial_J(2, 1, kInf) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(radial_J(1, 0, 3.0) == doctest::Approx(1 - std::exp(-3.0)).epsilon(1e-10));
  CHECK(radial_J(2, 3, kInf) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(radial_J(2, -0.5, kInf) == doctest::Approx(std::pow(2.0, -0.75) * std::tgamma(0.25)).epsilon(1e-9));
  CHECK(log_radial_J(1, 200, kInf) == doctest::Approx(std::lgamma(201.0)).epsilon(1e-10));
#ifdef BMFORGE_HAVE_BOOST
  for (double p : {1.0, 1.5, 2.0, 4.0})
    for (double k : {0.0, 1.0, 5.5}) {
      const double R = 1.7;
      const double oracle = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
          [&](double t) { return std::pow(t, k) * std::exp(-std::pow(t, p) / p); }, 0.0, R, 15, 1e-14);
      CHECK(radial_J(p, k, R) == doctest::Approx(oracle).epsilon(1e-10));
    }
#endif
}

TEST_CASE("radial stationary point") {
  const Vec e = Vec::Unit(3, 0);
  CHECK(radial_t0(RadialProfile(make_gaussian_potential(3), e), 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(radial_t0(RadialProfile(make_radial_potential(3, 1.0), e), 5.0) == doctest::Approx(5.0).epsilon(1e-9));
  CHECK(radial_t0(RadialProfile(make_radial_potential(3, 4.0), e), 8.0) == doctest::Approx(std::pow(8.0, 0.25)).epsilon(1e-9));
  CHECK_THROWS_AS(radial_t0(RadialProfile(make_zero_potential(3), e), 2.0), Error);
}

TEST_CASE("holdout fit uses interleaved halves") {
  const auto fit = holdout_fit_upper({1.0, 3.0, 2.0, 0.5, 1.5});
  CHECK(fit.constant == 2.0);
  CHECK(fit.validation_slack == doctest::Approx(-1.0));
  CHECK_FALSE(fit.pass);
}

TEST_CASE("radial ratio and bracket suites") {
  // p = q = 2: the sup over R is the full-space ratio 2 Gamma(n/2 + 1) / Gamma(n/2) = n.
  const auto g = lemma_maybe_suite(2.0, 2.0, 2, 32);
  for (const auto& row : g.rows) CHECK(row.normalized == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(g.pass);
  for (double p : {1.0, 2.0})
    for (double q : {1.0, 4.0}) CHECK(lemma_maybe_suite(p, q, 2, 64).pass);
  const auto b = bracket_suite(RadialProfile(make_product_potential(1, 1.0), Vec::Ones(1)), 4, 64);
  CHECK(b.lower_ok);
  CHECK(b.pass);
  CHECK(b.tail_c > 0.0);
}
