#pragma once

#include <random>
#include <string>

#include "bmforge/potential.hpp"

namespace bmforge {

enum class Family { Gaussian, ProductP, RadialP, Lebesgue, Custom };

std::string_view family_name(Family f);

/// Density e^{-V} / Z on R^n with V even and convex. Lebesgue has V = 0 and
/// no normalization.
class LogConcaveMeasure {
 public:
  static LogConcaveMeasure gaussian(int n);
  /// V = (1/p) sum |x_i|^p
  static LogConcaveMeasure product_p(int n, double p);
  /// V = |x|^p / p
  static LogConcaveMeasure radial_p(int n, double p);
  static LogConcaveMeasure lebesgue(int n);
  /// Law of T X for X ~ base.
  static LogConcaveMeasure pushforward(const LogConcaveMeasure& base, const Mat& T);

  int dim() const { return n_; }
  Family family() const { return family_; }
  /// Family of the underlying measure before any pushforward.
  Family base_family() const { return base_family_; }
  /// Exponent of the underlying family (2 for Gaussian, 0 for Lebesgue).
  double p() const { return p_; }
  /// Linear map from the underlying family (identity unless pushed forward).
  const Mat& transform() const { return T_; }

  const Potential& potential() const { return *V_; }
  const PotentialPtr& potential_ptr() const { return V_; }

  double V(const Vec& x) const { return V_->value(x); }
  Vec grad_V(const Vec& x) const { return V_->gradient(x); }
  Mat hessian_V(const Vec& x) const { return V_->hessian(x); }

  bool normalized() const { return normalized_; }
  /// log Z; throws Unnormalized for Lebesgue.
  double log_normalizer() const;
  double log_density(const Vec& x) const;
  double density(const Vec& x) const;

  bool rotation_invariant() const;
  /// V(0), the maximum of the log-density.
  double V0() const { return V_->value(Vec::Zero(n_)); }

  /// Exact draw from the normalized measure.
  Vec sample(std::mt19937_64& rng) const;

  std::string describe() const;

 private:
  LogConcaveMeasure() = default;
  int n_ = 0;
  Family family_ = Family::Gaussian;
  Family base_family_ = Family::Gaussian;
  double p_ = 2.0;
  PotentialPtr V_;
  bool normalized_ = true;
  double log_Z_ = 0.0;
  Mat T_;
};

/// Z by one-dimensional quadrature (closed form for Gaussian).
double normalizing_constant(const LogConcaveMeasure& mu);

/// log of int_0^inf t^k e^{-t^p/p} dt = log(p^{(k+1)/p - 1} Gamma((k+1)/p)).
double log_radial_moment_closed_form(double p, double k);

struct BregmanTerms {
  double grad_sq = 0.0;     // |grad V|^2
  double grad_dot_x = 0.0;  // <grad V, x>
  double laplacian = 0.0;   // Delta V
  double LV = 0.0;          // Delta V - |grad V|^2
  bool one_sided = false;   // x lies on the non-differentiability set
};

BregmanTerms bregman_terms(const LogConcaveMeasure& mu, const Vec& x);

}  // namespace bmforge
