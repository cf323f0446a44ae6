#include <doctest.h>

#include <cmath>

#include "bmforge/exponent.hpp"
#include "bmforge/parallel.hpp"
#include "bmforge/random_bodies.hpp"

using namespace bmforge;

namespace {
Vec v2(double a, double b) { return Vec(Eigen::Vector2d(a, b)); }

double bisect_closed_form(const std::function<double(double)>& area, const std::vector<double>& grid) {
  auto ok = [&](double p) {
    for (double l : grid)
      if (std::pow(area(l), p) - (1 - l) * std::pow(area(0), p) - l * std::pow(area(1), p) < -1e-12) return false;
    return true;
  };
  double lo = 0, hi = 64;
  while (hi - lo > 1e-6) ((ok(0.5 * (lo + hi))) ? lo : hi) = 0.5 * (lo + hi);
  return lo;
}
}  // namespace

TEST_CASE("lambda grid") {
  const auto g = default_lambda_grid();
  REQUIRE(g.size() == 33);
  CHECK(g.front() == 0.0);
  CHECK(g[16] == 0.5);
  CHECK(g.back() == 1.0);
  CHECK(g[1] < 1.0 / 32);
}

TEST_CASE("identical bodies reach the cap") {
  const auto K = ConvexBody::box(v2(1, 0.5));
  const auto r = interpolation_scan(LogConcaveMeasure::gaussian(2), K, K, default_lambda_grid(9));
  CHECK(r.at_cap);
  CHECK(r.p_star == kExponentCap);
}

TEST_CASE("lebesgue homothets and thin rectangles") {
  const auto leb = LogConcaveMeasure::lebesgue(2);
  const auto grid = default_lambda_grid();
  const auto h = interpolation_scan(leb, ConvexBody::box(v2(1, 1)), ConvexBody::box(v2(2, 2)), grid);
  CHECK(h.p_star >= 0.5);
  for (const auto& pt : h.points) {
    const double exact = std::pow(2 * (1 + pt.lambda), 2);
    CHECK(pt.m == doctest::Approx(exact).epsilon(1e-13));
  }
  CHECK(std::abs(slack_at(h, 0.5).slack) <= 3e-10);

  const auto K = ConvexBody::box(v2(1, 1));
  const auto L = ConvexBody::box(v2(0.2, 0.01));
  const auto r = interpolation_scan(leb, K, L, grid);
  auto area = [](double l) { return (2 * (1 - l) + 0.4 * l) * (2 * (1 - l) + 0.02 * l); };
  const double oracle = bisect_closed_form(area, grid);
  CHECK(r.p_star == doctest::Approx(oracle).epsilon(2e-3));
  CHECK(r.p_star >= 0.5);
  CHECK(r.p_star <= 0.56);
  CHECK(!slack_at(r, 0.75).pass);
}

TEST_CASE("gaussian exponents") {
  const auto g1 = LogConcaveMeasure::gaussian(1);
  const auto grid = default_lambda_grid();
  const auto r1 = interpolation_scan(g1, ConvexBody::box(Vec::Constant(1, 0.3)), ConvexBody::box(Vec::Constant(1, 2.5)), grid);
  CHECK(r1.p_star >= 1.0);

  const auto g2 = LogConcaveMeasure::gaussian(2);
  const auto r2 = interpolation_scan(g2, ConvexBody::box(v2(1, 1)), ConvexBody::box(v2(2, 0.5)), grid);
  CHECK(r2.p_star >= 0.5);
  CHECK(slack_at(r2, r2.p_star - 0.01).pass);
  CHECK(!slack_at(r2, r2.p_star + 0.05).pass);
  bool has_half = false;
  for (const auto& b : r2.reference_bounds) has_half = has_half || (b.name == "gaussian_dimensional" && b.value == 0.5);
  CHECK(has_half);
}

TEST_CASE("bisection and the geometric mean on random pairs") {
  const auto g2 = LogConcaveMeasure::gaussian(2);
  const auto grid = default_lambda_grid(17);
  for (std::uint64_t t = 0; t < 20; ++t) {
    auto rng = make_stream(42, t);
    const auto K = random_symmetric_polygon(rng);
    const auto L = random_symmetric_polygon(rng);
    const auto r = interpolation_scan(g2, K, L, grid);
    const auto mid = std::find_if(r.points.begin(), r.points.end(), [](const ScanPoint& p) { return p.lambda == 0.5; });
    REQUIRE(mid != r.points.end());
    CHECK(mid->m >= std::sqrt(r.points.front().m * r.points.back().m) - 3 * mid->error);
    CHECK(slack_at(r, std::max(1e-6, r.p_star - 0.01)).pass);
    if (!r.at_cap) {
      const auto above = slack_at(r, r.p_star + 0.05);
      CHECK((!above.pass || std::abs(above.slack) <= 3 * above.error));
    }
  }
}

TEST_CASE("bound table") {
  const auto g = reference_bound_table(Family::Gaussian, 2, 2.0);
  CHECK(g.size() == 3);
  const auto pr = reference_bound_table(Family::ProductP, 2, 1.0);
  bool found = false;
  for (const auto& b : pr)
    if (b.name == "product_A_np") {
      found = true;
      CHECK(b.value == doctest::Approx(1.0 / (2.0 * std::log(2.0))));
    }
  CHECK(found);
  for (Family f : {Family::Gaussian, Family::ProductP, Family::RadialP})
    CHECK(reference_bound_table(f, 3, 1.5).front().value == doctest::Approx(1.0 / 81));
}

TEST_CASE("falsification sweep") {
  const auto grid = default_lambda_grid(17);
  PairGenerator rects = [](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(5.0, 30.0);
    const double ratio = U(rng);
    return std::make_pair(ConvexBody::box(v2(1, 1)), ConvexBody::box(v2(0.2, 0.2 / ratio)));
  };
  const auto leb = LogConcaveMeasure::lebesgue(2);
  const auto bad = falsification_sweep(leb, rects, 0.75, 10, 3, grid);
  CHECK(bad.violations > 0);
  CHECK(bad.worst_slack < 0.0);
  CHECK(bad.witness.size() == 2);
  const auto fine = falsification_sweep(leb, rects, 1e-6, 10, 3, grid);
  CHECK(fine.violations == 0);
  PairGenerator polys = [](std::mt19937_64& rng) {
    auto K = random_symmetric_polygon(rng);
    return std::make_pair(K, random_symmetric_polygon(rng));
  };
  const auto gs = falsification_sweep(LogConcaveMeasure::gaussian(2), polys, 0.5, 10, 9, grid);
  CHECK(gs.violations == 0);
  CHECK(gs.worst_slack >= -3 * gs.worst_error);
}
