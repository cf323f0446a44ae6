#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>

#include "bmforge/bodies.hpp"
#include "bmforge/measures.hpp"
#include "bmforge/quadrature.hpp"
#include "bmforge/scalar_field.hpp"
#include "bmforge/test_functions.hpp"

namespace bmforge {

struct CertificateReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // lhs - rhs
  double error = 0.0;  // propagated integration error of the slack
  /// Largest exponent for which this u satisfies the key inequality (keyprop only).
  double p_certified = 0.0;
  bool pass = false;
  /// Denominator of the bound is not positive: the statement carries no information.
  bool vacuous = false;
  /// One side diverges (reported as +inf).
  bool divergent = false;
  int grid = 0;
  // Diagnostics.
  double mean_Lu = 0.0;
  double var_Lu = 0.0;
  double denominator = 0.0;
  double t_star = 0.0;
  std::string note;
};

/// Outward normal derivative prescribed at boundary point x with unit normal n.
using BoundaryData = std::function<double(const Vec& x, const Vec& normal)>;

struct TorsionResult {
  ScalarField field;
  double C = 0.0;
  /// max |Lu - C| with Lu rebuilt from nodal values by finite differences.
  double residual = 0.0;
  /// max |d_n u - f| at the boundary, one-sided differences.
  double boundary_defect = 0.0;
  int solver_iterations = 0;
};

/// Lu = C with <grad u, n> = f on the boundary of a centred box (n = 1, 2). In
/// one dimension the solution comes from the integrating factor, in two from a
/// vertex-centred finite-volume scheme. u is normalised to zero mu-mean.
TorsionResult solve_torsion(const LogConcaveMeasure& mu, const ConvexBody& K, const BoundaryData& f, int N = 0);
/// One-dimensional variant on [a, b]; f_a, f_b are outward derivatives.
TorsionResult solve_torsion_1d(const LogConcaveMeasure& mu, double a, double b, double f_a, double f_b, int N = 2000);

/// (1/mu(K)) int_K ||D^2 u||^2 + <D^2V grad u, grad u>  vs  p (avg Lu)^2 + Var(Lu).
CertificateReport check_keyprop(const LogConcaveMeasure& mu, const ConvexBody& K, const TestFunction& u, double p,
                                const IntegrationOptions& opts = {});
CertificateReport check_keyprop(const LogConcaveMeasure& mu, const ScalarField& u, double p);

/// (1/mu(K)) int_K ||D^2 u||^2 >= (mu(A)/mu(K)) a^2 / (n + avg_A(C^2 |grad V|^2 - 2 <grad V, x>)),
/// a = avg_A Lu, with C the Poincare constant supplied by the caller.
CertificateReport check_prop2(const LogConcaveMeasure& mu, const ConvexBody& K, const ConvexBody& A,
                              const TestFunction& u, double C_poin, const IntegrationOptions& opts = {});

/// avg tr(D^2u (D^2V)^{-1} D^2u) >= avg |grad u|^2 + (avg Lu)^2 / avg LV over K.
CertificateReport check_prop1(const LogConcaveMeasure& mu, const ConvexBody& K, const TestFunction& u,
                              const IntegrationOptions& opts = {});

struct MeasSimpleBound {
  double bound = 0.0;  // +inf when avg LV <= 0
  double k1 = 0.0;
  double avg_LV = 0.0;
  double error = 0.0;  // on the bound (inf when infinite)
  bool infinite = false;
};

/// k1 / avg_K LV with k1 the smallest Hessian eigenvalue (sampled over K when absent).
MeasSimpleBound meas_simple_bound(const LogConcaveMeasure& mu, const ConvexBody& K,
                                  std::optional<double> k1 = std::nullopt);

struct SublevelBody {
  ConvexBody body;
  double level = 0.0;  // W(0) + alpha n
  double measure = 0.0;
  double measure_error = 0.0;
  bool ball_contained = false;  // 0.1 B inside {W <= level}
  double max_gradient = 0.0;    // sampled over A
  double gradient_bound = 0.0;  // 10 alpha n^2
};

/// A = ((n - 1)/n) {W <= W(0) + alpha n} for the potential W of mu (n >= 2).
SublevelBody sublevel_body(const LogConcaveMeasure& mu, double alpha = 10.0);

struct GradientImageCheck {
  std::size_t pairs = 0;
  double bound = 0.0;        // (1 - lambda) q / lambda + r
  double max_value = 0.0;    // max <grad W(x), z>
  double max_violation = 0.0;
  bool pass = false;
  Vec witness_x, witness_z;
};

/// Samples x in (1 - lambda){W <= q + W(0)}, z in {W <= r + W(0)} and checks
/// <grad W(x), z> <= (1 - lambda) q / lambda + r.
GradientImageCheck check_gradient_image(PotentialPtr W, double q, double r, double lambda, std::size_t samples,
                                        std::uint64_t seed = 1);

}  // namespace bmforge
