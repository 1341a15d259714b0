#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <vector>

#include <Eigen/Dense>

namespace anoma {

/// Convex hull of a point set in two or three dimensions.
///
/// vertices() holds the extreme points. For full-dimensional inputs the hull
/// is described by outward facets (edges in 2D, triangles in 3D) with unit
/// normals; lower-dimensional inputs keep only their vertices.
class ConvexHull {
 public:
  static ConvexHull build(const std::vector<Eigen::VectorXd>& points);

  int dimension() const { return dimension_; }
  /// Affine dimension of the input (-1 empty, 0 point, 1 segment, ...).
  int affine_rank() const { return rank_; }
  const std::vector<Eigen::VectorXd>& vertices() const { return vertices_; }
  /// Triangles (3D) or edges (2D) as indices into vertices(), outward oriented.
  const std::vector<std::array<std::size_t, 3>>& facets() const { return facets_; }

  /// True when every facet plane leaves the point within tolerance.
  bool contains(const Eigen::VectorXd& point, double tolerance = 1e-9) const;

  /// 2D section {x in hull : x[axis] == value} of a 3D hull, as the vertices
  /// of a 2D hull in the remaining coordinates (ascending axis order).
  ConvexHull slice(int axis, double value) const;

 private:
  int dimension_ = 0;
  int rank_ = 0;
  std::vector<Eigen::VectorXd> vertices_;
  std::vector<std::array<std::size_t, 3>> facets_;
  std::vector<Eigen::VectorXd> normals_;
  std::vector<double> offsets_;
  // Lower-dimensional inputs: affine frame plus the hull of the projected
  // coordinates (rank 2 in 3D) or their extent (rank 1).
  Eigen::VectorXd origin_;
  Eigen::MatrixXd frame_;
  std::shared_ptr<const ConvexHull> reduced_;
  double extent_lo_ = 0.0;
  double extent_hi_ = 0.0;
};

/// Extreme points of a 2D or 3D point set. Throws DimensionError otherwise.
std::vector<Eigen::VectorXd> convex_hull(const std::vector<Eigen::VectorXd>& points);

}  // namespace anoma
