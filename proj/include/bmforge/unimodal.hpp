#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "bmforge/bodies.hpp"
#include "bmforge/measures.hpp"
#include "bmforge/radial.hpp"

namespace bmforge {

/// Even function whose sublevel sets are nested symmetric convex sets:
///   f(x) = scale * ||x||_G^power + sum_i w_i 1{x not in K_i},
/// with K_1 c K_2 c ... and w_i in (0, inf]. e^{-f} is then a layer-cake
/// (unimodal) function.
class LayerCakeFunction {
 public:
  static LayerCakeFunction zero(int n);
  /// -log 1_K
  static LayerCakeFunction indicator(const ConvexBody& K);
  /// Layers must be nested; they are sorted by size.
  static LayerCakeFunction layers(std::vector<std::pair<ConvexBody, double>> layers);
  /// scale * ||x||_G^power
  static LayerCakeFunction gauge_power(const ConvexBody& G, double scale, double power);
  /// ||x||_q^q
  static LayerCakeFunction lq_power(int n, double q);

  int dim() const { return n_; }
  double operator()(const Vec& x) const;
  double exp_neg(const Vec& x) const { return std::exp(-(*this)(x)); }
  /// Value of e^{-f} due to the continuous part only.
  double exp_neg_continuous(const Vec& x) const;
  const std::vector<std::pair<ConvexBody, double>>& layer_list() const { return layers_; }
  bool has_continuous_part() const { return gauge_.has_value(); }

 private:
  explicit LayerCakeFunction(int n) : n_(n) {}
  int n_;
  std::vector<std::pair<ConvexBody, double>> layers_;
  struct GaugePart {
    ConvexBody G;
    double scale;
    double power;
  };
  std::optional<GaugePart> gauge_;
};

struct LayerCakeCheck {
  std::size_t checked = 0;
  std::size_t violations = 0;  // evenness or quasi-convexity failures
  bool pass = false;
};

/// Samples random planar slices through 0 and tests f(x) = f(-x) and
/// f(t a + (1 - t) b) <= max(f(a), f(b)).
LayerCakeCheck check_layer_cake(const LayerCakeFunction& f, double radius, std::size_t samples, std::uint64_t seed);

/// int |t|^q dmu_p over the real line: p^{q/p} Gamma((q + 1)/p) / Gamma(1/p).
double unimod_constant(double p, double q);

struct UnimodMoment {
  double lhs = 0.0;  // int_K ||x||_q^q dmu_p
  double lhs_error = 0.0;
  double measure = 0.0;  // mu_p(K)
  double measure_error = 0.0;
  double ratio = 0.0;  // lhs / (n mu_p(K))
  double bound = 0.0;  // C n mu_p(K)
  bool pass = false;
};

UnimodMoment check_unimod_moment(double p, double q, const ConvexBody& K, double C);

struct UnimodFit {
  double p = 0.0;
  double q = 0.0;
  double exact = 0.0;          // full-space value of the ratio
  std::vector<double> ratios;  // whole space first, then random bodies
  std::vector<int> dims;
  HoldoutFit fit;
};

/// Fits C on the ratios of the whole space and random bodies in dimensions
/// 1..max_dim (training: even entries, validation: odd ones). The per-dimension
/// count is rounded up to an odd number.
UnimodFit fit_unimod_constant(double p, double q, int max_dim = 3, int bodies_per_dim = 8, std::uint64_t seed = 1);

struct CorrelationCheck {
  double lhs = 0.0;  // int e^{-f} e^{-g} dmu
  double rhs = 0.0;  // int e^{-f} dmu * int e^{-g} dmu
  double slack = 0.0;
  double error = 0.0;
  bool pass = false;
};

/// Layer-cake functions are positively correlated: lhs >= rhs is expected.
/// slack = lhs - rhs.
CorrelationCheck check_correlation(const LogConcaveMeasure& mu, const LayerCakeFunction& f,
                                   const LayerCakeFunction& g);

/// int_K ||x||_q^q dmu <= mu(K) int ||x||_q^q dmu. slack = rhs - lhs.
CorrelationCheck check_monotone_form(const LogConcaveMeasure& mu, double q, const ConvexBody& K);

}  // namespace bmforge
