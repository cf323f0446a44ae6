#pragma once

#include <random>

#include "bmforge/bodies.hpp"

namespace bmforge {

struct RandomPolygonOptions {
  int min_pairs = 2;
  int max_pairs = 6;
  double min_radius = 0.3;
  double max_radius = 2.0;
  /// Largest axis ratio of the random linear stretch applied afterwards.
  double max_aspect = 4.0;
};

/// Hull of +-v_i for random v_i, then a random rotation and stretch.
ConvexBody random_symmetric_polygon(std::mt19937_64& rng, const RandomPolygonOptions& opts = {});

/// Random symmetric body in R^n: polytope, ellipsoid or lp ball.
ConvexBody random_symmetric_body(std::mt19937_64& rng, int n);

/// Random centred box [-a_1, a_1] x ... with half-widths in [lo, hi].
ConvexBody random_box(std::mt19937_64& rng, int n, double lo, double hi);

}  // namespace bmforge
