#pragma once

#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "bmforge/bodies.hpp"
#include "bmforge/measures.hpp"
#include "bmforge/quadrature.hpp"

namespace bmforge {

inline constexpr double kExponentCap = 64.0;

/// lambda_i = (1 - cos(pi i / (count - 1))) / 2: contains 0, 1/2 (odd count) and 1,
/// denser near the endpoints.
std::vector<double> default_lambda_grid(int count = 33);

struct ScanPoint {
  double lambda = 0.0;
  double m = 0.0;  // mu((1 - lambda) K + lambda L)
  double error = 0.0;
  bool ok = true;
  std::string failure;
};

struct ReferenceBound {
  std::string name;
  double value = 0.0;
  std::string rate;  // structural form with constants set to 1
};

struct ExponentReport {
  std::vector<ScanPoint> points;
  double p_star = 0.0;
  bool at_cap = false;   // p_star is only a lower bound
  bool partial = false;  // some lambda failed to integrate
  std::vector<ReferenceBound> reference_bounds;
};

struct SlackAt {
  double slack = kInf;  // min over lambda of m^p - (1 - lambda) m0^p - lambda m1^p
  double error = 0.0;   // propagated error at the minimizing lambda
  double lambda = 0.0;
  bool pass = true;     // slack >= -3 error (plus a roundoff floor) at every lambda
};

/// Evaluates the p-mean inequality on the scanned points.
SlackAt slack_at(const ExponentReport& r, double p);

struct ScanOptions {
  Backend backend = Backend::Radial;
  std::size_t budget = 0;
  std::uint64_t seed = 1;
  double rel_tol = 1e-10;
  /// Bisection stops once the bracket is narrower than this.
  double p_tol = 1e-3;
};

ExponentReport interpolation_scan(const LogConcaveMeasure& mu, const ConvexBody& K, const ConvexBody& L,
                                  const std::vector<double>& lambdas, const ScanOptions& opts = {});

/// Constants left unspecified by the asymptotic statements; 1 by default.
struct BoundConstants {
  double c_general = 1.0;
  double c_product = 1.0;
  double c_rotation = 1.0;
};

/// Exponents stated for the family, evaluated with the given constants.
std::vector<ReferenceBound> reference_bound_table(Family family, int n, double p, const BoundConstants& c = {});
extern const char* const kBoundCaveat;

using PairGenerator = std::function<std::pair<ConvexBody, ConvexBody>(std::mt19937_64&)>;

struct SweepResult {
  double worst_slack = kInf;
  double worst_error = 0.0;
  double worst_lambda = 0.0;
  std::size_t worst_trial = 0;
  std::vector<ConvexBody> witness;  // K, L of the worst trial
  std::size_t violations = 0;       // trials with slack < -3 error
  std::size_t trials = 0;
  std::vector<SlackAt> per_trial;
};

/// Scans `trials` generated pairs at p_claim; trial t uses stream (seed, t).
SweepResult falsification_sweep(const LogConcaveMeasure& mu, const PairGenerator& gen, double p_claim,
                                std::size_t trials, std::uint64_t seed, const std::vector<double>& lambdas,
                                const ScanOptions& opts = {});

}  // namespace bmforge
