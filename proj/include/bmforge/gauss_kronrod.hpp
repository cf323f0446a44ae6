#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace bmforge {

struct QuadOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  std::size_t max_intervals = std::size_t{1} << 20;
  /// Only the first `tracked` components steer refinement (0 means all).
  std::size_t tracked = 0;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

struct QuadResultN {
  std::vector<double> value;
  std::vector<double> error;
  std::size_t evaluations = 0;
  bool converged = true;
};

using ScalarIntegrand = std::function<double(double)>;
/// Writes `dim` components for abscissa t into out.
using VectorIntegrand = std::function<void(double t, double* out)>;

/// Globally adaptive 7/15-point Gauss-Kronrod on [a, b]. Breakpoints inside
/// (a, b) seed the initial partition so kinks never sit inside a panel.
QuadResult integrate(const ScalarIntegrand& f, double a, double b, const QuadOptions& opts = {},
                     std::span<const double> breakpoints = {});

QuadResultN integrate(const VectorIntegrand& f, int dim, double a, double b,
                      const QuadOptions& opts = {}, std::span<const double> breakpoints = {});

/// Integral over [a, inf) through t = a + s / (1 - s).
QuadResult integrate_to_infinity(const ScalarIntegrand& f, double a, const QuadOptions& opts = {});

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// N-point Gauss-Legendre rule by Newton iteration on P_N.
GaussRule gauss_legendre(int N);

}  // namespace bmforge
