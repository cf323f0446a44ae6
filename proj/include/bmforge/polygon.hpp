#pragma once

#include <vector>

#include <Eigen/Dense>

namespace bmforge {

using Point2 = Eigen::Vector2d;
using PointList = std::vector<Point2>;

/// Convex hull, counter-clockwise, starting at the lowest (then leftmost)
/// vertex, collinear points dropped.
PointList convex_hull(PointList points);

/// Minkowski sum of two convex CCW polygons by merging edge sequences.
PointList minkowski_sum(const PointList& P, const PointList& Q);

PointList scale_polygon(const PointList& P, double c);

double polygon_area(const PointList& P);

/// Rotates a CCW polygon so that it starts at its lowest, then leftmost, vertex.
PointList canonical_start(PointList P);

/// Removes vertices lying on the segment between their neighbours.
PointList drop_collinear(const PointList& P, double tol = 1e-12);

/// Outward edge normals a_e (unit) and offsets b_e = <a_e, v_e>.
void polygon_halfspaces(const PointList& P, Eigen::MatrixXd& A, Eigen::VectorXd& b);

}  // namespace bmforge
