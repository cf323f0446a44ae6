#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bmforge/bodies.hpp"
#include "bmforge/measures.hpp"

namespace bmforge {

enum class Backend { Radial, Grid, MonteCarlo };

std::string_view backend_name(Backend b);
Backend parse_backend(const std::string& name);

struct MeasureEstimate {
  double value = 0.0;
  double std_error = 0.0;  // sampling error; zero for deterministic backends
  double error = 0.0;      // total error estimate (quadrature bound or 3 std errors)
  Backend backend = Backend::Radial;
  std::size_t nodes = 0;
  bool converged = true;
};

struct IntegrationOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  /// Node budget: sphere directions for n = 3, 4 (radial), cells (grid), samples (MC).
  std::size_t budget = 0;
  std::uint64_t seed = 1;
  /// Integrand is even, so half of the sphere suffices.
  bool even = false;
};

/// Writes m components of f(x).
using FieldIntegrand = std::function<void(const Vec& x, double* out)>;

struct BodyIntegral {
  std::vector<double> value;
  std::vector<double> error;
  std::size_t nodes = 0;
  bool converged = true;
};

/// int_K |x|^{a_i} f_i(x) dmu(x) in polar coordinates (n <= 4). `radial_powers`
/// may be empty (all zero); negative powers > -n are handled by substitution.
BodyIntegral integrate_over_body(const LogConcaveMeasure& mu, const ConvexBody& K,
                                 const FieldIntegrand& f, int m,
                                 const IntegrationOptions& opts = {},
                                 const std::vector<double>& radial_powers = {});

/// mu(K) by the chosen backend.
MeasureEstimate body_measure(const LogConcaveMeasure& mu, const ConvexBody& K, Backend backend,
                             std::size_t budget = 0, std::uint64_t seed = 1,
                             double rel_tol = 1e-10);

struct MomentResult {
  double value = 0.0;
  double error = 0.0;
};

/// (1 / mu(K)) int_K |x|^q dmu.
MomentResult moment(const LogConcaveMeasure& mu, const ConvexBody& K, double q);

/// Radius R with mu(R B) = mu(K), mu rotation invariant.
double equal_measure_ball(const LogConcaveMeasure& mu, const ConvexBody& K);
/// mu(R B) for rotation-invariant mu.
double ball_measure(const LogConcaveMeasure& mu, double R);

struct CovarianceResult {
  Mat cov;
  double op_norm = 0.0;
  /// sqrt((1/mu(K)) int_K |x|^4 dmu), an upper bound on op_norm.
  double moment4_bound = 0.0;
  double error = 0.0;
};

CovarianceResult covariance_restriction(const LogConcaveMeasure& mu, const ConvexBody& K);

}  // namespace bmforge
