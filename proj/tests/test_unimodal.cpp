#include <doctest.h>

#include <cmath>

#include "bmforge/gauss_kronrod.hpp"
#include "bmforge/parallel.hpp"
#include "bmforge/random_bodies.hpp"
#include "bmforge/unimodal.hpp"

using namespace bmforge;

namespace {
Vec v2(double a, double b) { return Vec(Eigen::Vector2d(a, b)); }

// int_{-a}^{a} |t|^q e^{-|t|^p/p} dt / int_R e^{-|t|^p/p} dt by adaptive quadrature.
double truncated_moment_1d(double p, double q, double a) {
  QuadOptions o;
  o.rel_tol = 1e-13;
  o.abs_tol = 0;
  auto w = [&](double t) { return std::exp(-std::pow(t, p) / p); };
  const double Z = 2 * (integrate(w, 0, 1, o).value + integrate(w, 1, 60, o).value);
  auto f = [&](double t) { return std::pow(t, q) * w(t); };
  return 2 * integrate(f, 0, a, o).value / Z;
}
}  // namespace

TEST_CASE("layer cake functions") {
  const auto f = LayerCakeFunction::lq_power(2, 1.5);
  CHECK(f(v2(1, -2)) == doctest::Approx(1 + std::pow(2.0, 1.5)));
  CHECK(check_layer_cake(f, 3.0, 500, 1).pass);
  const auto L = LayerCakeFunction::layers({{ConvexBody::box(v2(2, 2)), 1.0}, {ConvexBody::box(v2(1, 0.5)), 0.5}});
  CHECK(L(v2(0, 0)) == 0.0);
  CHECK(L(v2(1.5, 0)) == 0.5);
  CHECK(L(v2(3, 0)) == 1.5);
  CHECK(check_layer_cake(L, 3.0, 500, 2).pass);
  CHECK_THROWS(LayerCakeFunction::layers({{ConvexBody::box(v2(2, 0.1)), 1.0}, {ConvexBody::box(v2(0.1, 2)), 1.0}}));
}

TEST_CASE("full space moment identity") {
  for (double p : {1.0, 1.5, 2.0})
    for (double q : {1.0, 2.0}) {
      const double C = truncated_moment_1d(p, q, 80.0);
      CHECK(unimod_constant(p, q) == doctest::Approx(C).epsilon(1e-10));
      for (int n = 1; n <= 3; ++n) {
        const auto m = check_unimod_moment(p, q, ConvexBody::whole_space(n), C);
        CHECK(std::abs(m.lhs - C * n) <= 1e-6);
        CHECK(m.pass);
      }
    }
}

TEST_CASE("moment examples") {
  // p = q = 2 on the square: 2 * truncated second moment per unit mass.
  const auto m = check_unimod_moment(2.0, 2.0, ConvexBody::box(v2(1, 1)), 1.0);
  const double g1 = std::erf(1 / std::sqrt(2.0));
  CHECK(m.lhs / m.measure == doctest::Approx(2 * truncated_moment_1d(2, 2, 1) / g1).epsilon(1e-9));
  CHECK(m.pass);
  const auto tiny = check_unimod_moment(1.0, 1.0, ConvexBody::lp_ball(2, 2.0, 1e-3), 1.0);
  CHECK(tiny.ratio < 1e-3);
}

TEST_CASE("holdout fit of the moment constant") {
  for (double p : {1.0, 2.0}) {
    const auto fit = fit_unimod_constant(p, 2.0, 2, 5, 3);
    CHECK(fit.fit.pass);
    CHECK(fit.fit.constant == doctest::Approx(fit.exact).epsilon(1e-8));
  }
}

TEST_CASE("correlation of layer cake functions") {
  const auto g = LogConcaveMeasure::gaussian(2);
  const auto B = ConvexBody::box(v2(1, 0.5));
  const auto f = LayerCakeFunction::lq_power(2, 2.0);
  const auto zero = check_correlation(g, f, LayerCakeFunction::zero(2));
  CHECK(std::abs(zero.slack) <= 1e-10);
  const auto ind = check_correlation(g, LayerCakeFunction::indicator(B), LayerCakeFunction::indicator(B));
  const double mb = std::erf(1 / std::sqrt(2.0)) * std::erf(0.5 / std::sqrt(2.0));
  CHECK(ind.lhs == doctest::Approx(mb).epsilon(1e-9));
  CHECK(ind.slack == doctest::Approx(mb * (1 - mb)).epsilon(1e-9));
  for (std::uint64_t t = 0; t < 5; ++t) {
    auto rng = make_stream(17, t);
    const auto P = random_symmetric_polygon(rng);
    CHECK(check_correlation(g, f, LayerCakeFunction::indicator(P)).pass);
    CHECK(check_correlation(LogConcaveMeasure::radial_p(2, 1.5), f, LayerCakeFunction::indicator(P)).pass);
  }
}

TEST_CASE("monotone form on random polygons") {
  for (double p : {1.0, 1.5, 2.0})
    for (std::uint64_t t = 0; t < 10; ++t) {
      auto rng = make_stream(23, t);
      const auto c = check_monotone_form(LogConcaveMeasure::product_p(2, p), 2.0, random_symmetric_polygon(rng));
      CHECK(c.pass);
    }
}
