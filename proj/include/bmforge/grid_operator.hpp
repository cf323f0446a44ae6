#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "bmforge/common.hpp"
#include "bmforge/potential.hpp"

namespace bmforge {

/// Cell-centred finite-volume discretisation of the weighted Neumann form
/// int |grad f|^2 e^{-V} on a rectangle, optionally clipped to a membership
/// mask (staircase). One-dimensional problems use ny = 1.
struct WeightedGrid {
  int nx = 0, ny = 0;
  std::size_t stride = 0;  // padded row length nx + 2
  double x0 = 0.0, y0 = 0.0, hx = 0.0, hy = 0.0;
  std::vector<double> diag, east, north, mass;
  std::vector<char> active;
  std::size_t active_count = 0;

  std::size_t size() const { return stride * static_cast<std::size_t>(ny + 2); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j + 1) * stride + static_cast<std::size_t>(i + 1);
  }
  double cx(int i) const { return x0 + (i + 0.5) * hx; }
  double cy(int j) const { return y0 + (j + 0.5) * hy; }
  std::size_t begin() const { return stride + 1; }
  std::size_t end() const { return size() - stride - 1; }
};

using Membership = std::function<bool(double x, double y)>;

/// Grid over [lo_x, hi_x] x [lo_y, hi_y] (dim 2) or [lo_x, hi_x] (dim 1).
/// Cells whose centre fails `inside` are dropped, as are cells not connected
/// to the largest component.
WeightedGrid build_weighted_grid(const Potential& V, int dim, double lo_x, double hi_x, double lo_y,
                                 double hi_y, int nx, int ny, const Membership& inside = {});

/// y = A x on the padded layout.
void apply_operator(const WeightedGrid& g, const std::vector<double>& x, std::vector<double>& y);

struct PcgResult {
  int iterations = 0;
  double relative_residual = 0.0;
};

/// Solves A y = b for b orthogonal to constants (projected first); y is used
/// as the starting guess. Jacobi-preconditioned CG.
PcgResult solve_neumann(const WeightedGrid& g, std::vector<double> b, std::vector<double>& y,
                        double tol = 1e-11, int max_iter = 20000);

struct EigenResult {
  double lambda = 0.0;
  std::vector<double> vector;  // M-normalised, M-orthogonal to constants
  int iterations = 0;
  int inner_iterations = 0;
};

/// Smallest nonzero eigenvalue of A f = lambda M f by inverse iteration with
/// constants deflated. With `even`, iterates are symmetrised under x -> -x.
EigenResult smallest_neumann_eigenpair(const WeightedGrid& g, bool even, double tol = 1e-10);

}  // namespace bmforge
