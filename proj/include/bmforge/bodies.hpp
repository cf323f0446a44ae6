#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bmforge/common.hpp"
#include "bmforge/polygon.hpp"
#include "bmforge/potential.hpp"

namespace bmforge {

/// Unit vector in R^n.
class Direction {
 public:
  /// Normalizes v; throws on the zero vector.
  static Direction from(const Vec& v);
  const Vec& coords() const { return coords_; }
  int dim() const { return static_cast<int>(coords_.size()); }

 private:
  explicit Direction(Vec v) : coords_(std::move(v)) {}
  Vec coords_;
};

struct RadialValue {
  double value = 0.0;
  double error = 0.0;
};

class ConvexBody;

namespace rep {

struct HPolytope {
  Mat A;  // rows a_i, constraint <a_i, x> <= b_i
  Vec b;
  Mat lineality;              // orthonormal basis of {d : A d = 0}, may have zero columns
  std::vector<Vec> vertices;  // of the pointed part
  std::vector<Vec> rays;
};

struct VPolygon {
  PointList vertices;  // CCW
  Mat A;               // unit outward normals
  Vec b;
};

struct LpBall {
  double p;  // may be +inf
  double r;
};

struct Ellipsoid {
  Mat M;  // {x : x^T M^{-1} x <= 1}
  Mat M_inv;
};

struct Sublevel {
  PotentialPtr W;
  double q;
};

struct SupportInterp {
  std::vector<std::pair<double, ConvexBody>> terms;
  double lipschitz = 0.0;  // circumradius, bounds |grad h|
};

struct LinearImage {
  Mat T;
  Mat T_inv;
  std::shared_ptr<const ConvexBody> base;
};

struct WholeSpace {};

}  // namespace rep

/// Symmetric convex body with 0 in its interior.
class ConvexBody {
 public:
  enum class Kind { HPolytope, VPolygon, LpBall, Ellipsoid, Sublevel, SupportInterp, LinearImage, WholeSpace };

  static ConvexBody hpolytope(const Mat& A, const Vec& b);
  /// The hull of the given points; must contain 0 in its interior.
  static ConvexBody vpolygon(const PointList& points);
  /// Axis-aligned box with the given half-widths (a polygon in the plane).
  static ConvexBody box(const Vec& half_widths);
  static ConvexBody lp_ball(int n, double p, double r);
  static ConvexBody ellipsoid(const Mat& M);
  static ConvexBody sublevel(PotentialPtr W, double q);
  static ConvexBody support_interp(const std::vector<std::pair<double, ConvexBody>>& terms);
  static ConvexBody linear_image(const Mat& T, const ConvexBody& base);
  static ConvexBody whole_space(int n);

  int dim() const { return dim_; }
  bool symmetric() const { return symmetric_; }
  Kind kind() const;

  /// h_K(theta) = sup <x, theta>; positively homogeneous in theta.
  double support(const Vec& theta) const;
  /// Minkowski functional.
  double gauge(const Vec& x) const;
  /// sup{t : t u in K} with an error bound (zero for exact representations).
  RadialValue radial(const Vec& u) const;
  double radial_function(const Vec& u) const { return radial(u).value; }
  bool contains(const Vec& x, double tol = 0.0) const { return gauge(x) <= 1.0 + tol; }

  bool bounded() const;
  /// Upper bound on max |x| over K.
  double circumradius() const;
  /// Lower bound on the largest centred ball inside K.
  double inradius() const;
  /// support(e_i), i.e. the half-widths of the bounding box.
  Vec bounding_half_widths() const;

  /// Exact vertex list when K is a planar polygon in any representation.
  std::optional<PointList> polygon_vertices() const;
  /// Half-widths when K is an axis-aligned box.
  std::optional<Vec> box_half_widths() const;
  /// n = 2: halfspaces (a_i / b_i) with gauge(x) = max_i <a_i, x>.
  std::optional<Mat> gauge_halfspaces_2d() const;
  /// n = 2: polar angles in [0, 2pi) at which the radial function has a kink.
  std::vector<double> kink_angles() const;

  std::string describe() const;

  template <class R>
  const R* as() const;

  struct Rep;

 private:
  ConvexBody(int dim, bool symmetric, std::shared_ptr<const Rep> rep)
      : dim_(dim), symmetric_(symmetric), rep_(std::move(rep)) {}

  RadialValue interp_radial(const rep::SupportInterp& s, const Vec& u) const;
  double sublevel_support(const rep::Sublevel& s, const Vec& theta) const;

  int dim_ = 0;
  bool symmetric_ = true;
  std::shared_ptr<const Rep> rep_;
};

double support(const ConvexBody& K, const Direction& theta);
double gauge(const ConvexBody& K, const Vec& x);
RadialValue radial_function(const ConvexBody& K, const Direction& theta);

/// c K, keeping the representation where possible.
ConvexBody scaled(const ConvexBody& K, double c);

/// c with L = c K when support ratios over a 64-direction probe agree to 1e-9.
std::optional<double> homothety_ratio(const ConvexBody& K, const ConvexBody& L);

/// (1 - lambda) K + lambda L.
ConvexBody interpolate(const ConvexBody& K, const ConvexBody& L, double lambda);

/// Deterministic probe directions on S^{n-1} (n <= 4), used by homothety
/// detection and several diagnostics.
std::vector<Vec> probe_directions(int n, int count);

}  // namespace bmforge
