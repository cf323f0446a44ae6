#pragma once

#include "bmforge/bodies.hpp"
#include "bmforge/measures.hpp"
#include "bmforge/quadrature.hpp"
#include "bmforge/test_functions.hpp"

namespace bmforge {

struct SpectralOptions {
  /// Cells along the longest axis of the fine grid; 0 picks 512 (1D) or 128 (2D).
  int grid = 0;
  bool even = false;
  double tol = 1e-10;
  /// Unbounded domains are cut where V - V(0) exceeds this.
  double truncation_drop = 30.0;
};

struct SpectralReport {
  double C_poin = 0.0;
  double lambda1 = 0.0;
  /// Estimated |C_poin - C_exact| from the two finest grids.
  double convergence = 0.0;
  int grid = 0;
  int coarse_grid = 0;
  double lambda_fine = 0.0;
  double lambda_coarse = 0.0;
  bool richardson = false;  // rectangular domain, second-order extrapolation used
  bool even = false;
  int iterations = 0;
};

/// mu of dimension 1 restricted to [a, b].
SpectralReport poincare_1d(const LogConcaveMeasure& mu, double a, double b, const SpectralOptions& opts = {});
/// mu of dimension 2 restricted to K (box exactly, other bodies as a staircase).
SpectralReport poincare_2d(const LogConcaveMeasure& mu, const ConvexBody& K, const SpectralOptions& opts = {});
/// Dispatches on the dimension (1 or 2).
SpectralReport poincare(const LogConcaveMeasure& mu, const ConvexBody& K, const SpectralOptions& opts = {});
/// Constant on even functions; K symmetric.
SpectralReport even_poincare(const LogConcaveMeasure& mu, const ConvexBody& K, SpectralOptions opts = {});

struct VarianceCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  double error = 0.0;
  bool pass = false;   // slack >= -3 error
  bool divergent = false;  // rhs is +inf
};

/// mu(K) int_K f^2 - (int_K f)^2 <= mu(K) int_K <(Hess V)^{-1} grad f, grad f>.
/// Throws SingularHessian when Hess V degenerates on a set of positive measure.
VarianceCheck brascamp_lieb_check(const LogConcaveMeasure& mu, const ConvexBody& K, const TestFunction& f,
                                  const IntegrationOptions& opts = {});

struct KlsRoute {
  SpectralReport spectral;
  double sqrt_cov_norm = 0.0;
  double ratio = 0.0;  // C_poin / sqrt(||Cov||_op)
};

KlsRoute kls_route_bound(const LogConcaveMeasure& mu, const ConvexBody& K, const SpectralOptions& opts = {});

/// (Hess V)^{-1} g, treating infinite curvature directions as zero.
Vec solve_hessian(const Mat& H, const Vec& g);

}  // namespace bmforge
