#pragma once

#include <vector>

#include "bmforge/common.hpp"
#include "bmforge/measures.hpp"

namespace bmforge {

/// Nodal function on a uniform vertex grid over a box [-w_1, w_1] x ... (n = 1, 2),
/// with first and second derivatives stored per node.
struct ScalarField {
  int dim = 1;
  int nx = 0, ny = 0;  // intervals per axis; nodes are (nx + 1) x (ny + 1)
  double x0 = 0.0, y0 = 0.0, hx = 0.0, hy = 0.0;
  std::vector<double> u, gx, gy, hxx, hxy, hyy;
  bool even = false;

  std::size_t nodes() const { return static_cast<std::size_t>(nx + 1) * static_cast<std::size_t>(dim == 2 ? ny + 1 : 1); }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx + 1) + static_cast<std::size_t>(i); }
  Vec point(std::size_t k) const;
  Vec gradient(std::size_t k) const;
  Mat hessian(std::size_t k) const;
  double laplacian(std::size_t k) const;
  /// Trapezoid weight of node k (cell volume share).
  double weight(std::size_t k) const;
  /// Same rule on the grid of every other node (nx, ny even); zero off it.
  double coarse_weight(std::size_t k) const;
  /// Lu = Delta u - <grad u, grad V>.
  double L(const LogConcaveMeasure& mu, std::size_t k) const;
};

/// Largest |u(x) - u(-x)| over mirrored node pairs.
double evenness_defect(const ScalarField& f);

}  // namespace bmforge

#include "bmforge/test_functions.hpp"

namespace bmforge {

/// Samples u on the node grid of the box with the given half-widths (n = 1, 2).
/// With `analytic_derivatives` false the derivatives are rebuilt from the
/// nodal values by second-order differences (one-sided at the boundary).
ScalarField sample_field(const TestFunction& u, const Vec& half_widths, int nx, bool analytic_derivatives = true);

/// Recomputes gx..hyy from u by second-order differences.
void differentiate(ScalarField& f);

}  // namespace bmforge
