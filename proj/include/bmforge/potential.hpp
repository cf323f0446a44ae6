#pragma once

#include <memory>
#include <vector>

#include "bmforge/common.hpp"

namespace bmforge {

/// Where the Hessian of a potential loses rank.
enum class HessianDegeneracy {
  None,
  Origin,       // vanishes like |x|^{order} at 0 only
  Hyperplanes,  // vanishes like |x_i|^{order} on a null set of hyperplanes
  Everywhere,   // singular on a set of positive measure
};

/// Even convex potential V with derivative oracles.
class Potential {
 public:
  virtual ~Potential() = default;

  virtual int dim() const = 0;
  virtual double value(const Vec& x) const = 0;
  virtual Vec gradient(const Vec& x) const = 0;
  virtual Mat hessian(const Vec& x) const = 0;
  virtual double laplacian(const Vec& x) const { return hessian(x).trace(); }

  /// False on the null set where V is not twice differentiable.
  virtual bool smooth_at(const Vec& /*x*/) const { return true; }
  /// n = 2 only: directions along which V has a kink.
  virtual std::vector<Vec> kink_directions() const { return {}; }
  virtual HessianDegeneracy degeneracy() const { return HessianDegeneracy::None; }
  virtual double degeneracy_order() const { return 0.0; }
  /// Rough length over which V rises by O(1) from its minimum.
  virtual double length_scale() const { return 1.0; }
};

using PotentialPtr = std::shared_ptr<const Potential>;

PotentialPtr make_gaussian_potential(int n);
/// (1/p) sum |x_i|^p
PotentialPtr make_product_potential(int n, double p);
/// |x|^p / p
PotentialPtr make_radial_potential(int n, double p);
PotentialPtr make_zero_potential(int n);
/// sum (sqrt(x_i^2 + eps^2) - eps): a C^2 stand-in for the l1 norm.
PotentialPtr make_smoothed_l1_potential(int n, double eps);
/// y -> V(T^{-1} y)
PotentialPtr make_pushforward_potential(PotentialPtr base, const Mat& T);

/// Directional derivative d/dt V(t theta).
double radial_derivative(const Potential& V, const Vec& theta, double t);

/// Smallest t > 0 with V(t theta) - V(0) - k log t >= drop, found by doubling and
/// bisection. Returns +inf when V stays bounded along the ray.
double radial_cutoff(const Potential& V, const Vec& theta, double drop, double k = 0.0);

}  // namespace bmforge
