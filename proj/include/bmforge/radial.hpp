#pragma once

#include <vector>

#include "bmforge/measures.hpp"

namespace bmforge {

/// J_k^p(R) = int_0^R t^k e^{-t^p/p} dt, R may be +inf. Relative error <= 1e-10.
double radial_J(double p, double k, double R);
/// log J_k^p(R), safe for large k.
double log_radial_J(double p, double k, double R);

/// One-dimensional slice t -> V(t theta), t >= 0.
class RadialProfile {
 public:
  RadialProfile(const LogConcaveMeasure& mu, const Vec& theta);
  RadialProfile(PotentialPtr V, const Vec& theta);

  const Vec& theta() const { return theta_; }
  double V(double t) const;
  double dV(double t) const;
  /// log g_k(t) = k log t - V(t theta)
  double log_g(double k, double t) const;
  /// int_0^R t^k e^{-(V(t theta) - V(0))} dt and its log; R may be +inf.
  double J(double k, double R = kInf) const;
  double log_J(double k, double R = kInf) const;

 private:
  PotentialPtr Vp_;
  Vec theta_;
  double V0_;
};

/// Maximizer of g_k(t) = t^k e^{-V_theta(t)}: root of t V'_theta(t) = k by bisection.
double radial_t0(const RadialProfile& profile, double k);

/// Holdout protocol for a fitted constant: the constant is the largest value
/// among the even-indexed (training) entries; validation slack is
/// min over odd-indexed entries of (constant - value); it passes when that is
/// nonnegative up to a relative roundoff of 1e-12.
struct HoldoutFit {
  double constant = 0.0;
  double validation_slack = 0.0;
  bool pass = false;
};
HoldoutFit holdout_fit_upper(const std::vector<double>& values);

/// Least-squares slope of log y against log x.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

struct LemmaMaybeRow {
  double p, q;
  int n;
  double sup_ratio;   // sup over the R grid of J_{n+q-1}(R) / J_{n-1}(R)
  double normalized;  // sup_ratio / n^{q/p}
};

struct LemmaMaybeReport {
  double p, q;
  std::vector<LemmaMaybeRow> rows;
  HoldoutFit fit;
  double slope = 0.0;
  bool pass = false;
};

/// Ratio bound J_{n+q-1}/J_{n-1} <= c n^{q/p} over n in [n_min, n_max] and
/// a log grid of R.
LemmaMaybeReport lemma_maybe_suite(double p, double q, int n_min = 2, int n_max = 64);

struct BracketRow {
  double k;
  double ratio;       // J_k / (t0 g_k(t0))
  double tail_ratio;  // int_{5 t0}^inf t^k e^{-V} / J_k
};

struct BracketReport {
  std::vector<BracketRow> rows;
  bool lower_ok = false;    // ratio >= 1/(k+1) everywhere
  HoldoutFit upper_fit;     // on sqrt(k) * ratio
  HoldoutFit tail_fit;      // on log(tail_ratio) / k, constant is -c
  double tail_c = 0.0;
  bool pass = false;
};

/// Two-sided bound on J_k and the tail bound beyond 5 t0 for k = k_min..k_max.
BracketReport bracket_suite(const RadialProfile& profile, int k_min = 4, int k_max = 64);

}  // namespace bmforge
