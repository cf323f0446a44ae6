#include "bmforge/random_bodies.hpp"

#include <cmath>

namespace bmforge {

namespace {

double uniform(std::mt19937_64& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

Mat rotation2(double a) {
  Mat R(2, 2);
  R << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  return R;
}

}  // namespace

ConvexBody random_symmetric_polygon(std::mt19937_64& rng, const RandomPolygonOptions& opts) {
  const int pairs = std::uniform_int_distribution<int>(opts.min_pairs, opts.max_pairs)(rng);
  PointList pts;
  const double base = uniform(rng, 0.0, kPi);
  for (int i = 0; i < pairs; ++i) {
    // Spread the angles so the hull never degenerates to a segment.
    const double a = base + kPi * (i + uniform(rng, 0.1, 0.9)) / pairs;
    const double r = uniform(rng, opts.min_radius, opts.max_radius);
    const Point2 v(r * std::cos(a), r * std::sin(a));
    pts.push_back(v);
    pts.push_back(-v);
  }
  const double aspect = uniform(rng, 1.0, opts.max_aspect);
  Mat S = Mat::Identity(2, 2);
  S(0, 0) = std::sqrt(aspect);
  S(1, 1) = 1.0 / std::sqrt(aspect);
  const Mat T = rotation2(uniform(rng, 0.0, kPi)) * S;
  PointList mapped;
  for (const auto& p : pts) mapped.push_back(T * p);
  return ConvexBody::vpolygon(mapped);
}

ConvexBody random_box(std::mt19937_64& rng, int n, double lo, double hi) {
  Vec w(n);
  for (int i = 0; i < n; ++i) w[i] = uniform(rng, lo, hi);
  return ConvexBody::box(w);
}

ConvexBody random_symmetric_body(std::mt19937_64& rng, int n) {
  if (n == 2 && uniform(rng, 0.0, 1.0) < 0.5) return random_symmetric_polygon(rng);
  const int pick = std::uniform_int_distribution<int>(0, 2)(rng);
  if (pick == 0) return random_box(rng, n, 0.3, 2.0);
  if (pick == 1) {
    Mat G(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) G(i, j) = uniform(rng, -1.0, 1.0);
    return ConvexBody::ellipsoid(G * G.transpose() + 0.2 * Mat::Identity(n, n));
  }
  const double p = uniform(rng, 1.0, 4.0);
  return ConvexBody::lp_ball(n, p, uniform(rng, 0.5, 2.0));
}

}  // namespace bmforge
