#include "bmforge/polygon.hpp"

#include <algorithm>
#include <cmath>

#include "bmforge/common.hpp"

namespace bmforge {

namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

double cross(const Point2& u, const Point2& v) { return u.x() * v.y() - u.y() * v.x(); }

bool lower(const Point2& a, const Point2& b) {
  return a.y() < b.y() || (a.y() == b.y() && a.x() < b.x());
}

}  // namespace

PointList convex_hull(PointList pts) {
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  PointList hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    const auto& p = pts[i - 1];
    while (k >= t && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return canonical_start(drop_collinear(hull));
}

PointList canonical_start(PointList P) {
  if (P.empty()) return P;
  auto it = std::min_element(P.begin(), P.end(), lower);
  std::rotate(P.begin(), it, P.end());
  return P;
}

PointList drop_collinear(const PointList& P, double tol) {
  if (P.size() < 3) return P;
  PointList out = P;
  bool changed = true;
  while (changed && out.size() >= 3) {
    changed = false;
    const std::size_t m = out.size();
    for (std::size_t i = 0; i < m; ++i) {
      const Point2& prev = out[(i + m - 1) % m];
      const Point2& next = out[(i + 1) % m];
      const double scale = (next - prev).norm() * std::max((out[i] - prev).norm(), 1e-300);
      if (std::abs(cross(prev, out[i], next)) <= tol * scale) {
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return out;
}

PointList minkowski_sum(const PointList& Pin, const PointList& Qin) {
  require(Pin.size() >= 3 && Qin.size() >= 3, ErrorKind::InvalidArgument,
          "Minkowski sum needs two proper polygons");
  const PointList P = canonical_start(Pin);
  const PointList Q = canonical_start(Qin);
  const std::size_t m = P.size(), n = Q.size();
  PointList out;
  out.reserve(m + n);
  std::size_t i = 0, j = 0;
  while (i < m || j < n) {
    out.push_back(P[i % m] + Q[j % n]);
    const Point2 ep = P[(i + 1) % m] - P[i % m];
    const Point2 eq = Q[(j + 1) % n] - Q[j % n];
    const double c = cross(ep, eq);
    if (j >= n || (i < m && c > 0)) {
      ++i;
    } else if (i >= m || c < 0) {
      ++j;
    } else {
      ++i;
      ++j;
    }
  }
  return canonical_start(drop_collinear(out));
}

PointList scale_polygon(const PointList& P, double c) {
  PointList out;
  out.reserve(P.size());
  for (const auto& v : P) out.push_back(c * v);
  return out;
}

double polygon_area(const PointList& P) {
  double s = 0.0;
  for (std::size_t i = 0; i < P.size(); ++i) s += cross(P[i], P[(i + 1) % P.size()]);
  return 0.5 * s;
}

void polygon_halfspaces(const PointList& P, Eigen::MatrixXd& A, Eigen::VectorXd& b) {
  const std::size_t m = P.size();
  A.resize(static_cast<Eigen::Index>(m), 2);
  b.resize(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    const Point2 e = P[(i + 1) % m] - P[i];
    Point2 nrm(e.y(), -e.x());
    nrm.normalize();
    A.row(static_cast<Eigen::Index>(i)) = nrm.transpose();
    b[static_cast<Eigen::Index>(i)] = nrm.dot(P[i]);
  }
}

}  // namespace bmforge
