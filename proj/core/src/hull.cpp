#include "asyncnoma/hull.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_map>

#include "asyncnoma/errors.hpp"

namespace anoma {
namespace {

using Vec = Eigen::VectorXd;

double cross2(const Vec& o, const Vec& a, const Vec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double scale_of(const std::vector<Vec>& pts) {
  double s = 0.0;
  for (const auto& p : pts) s = std::max(s, p.cwiseAbs().maxCoeff());
  return std::max(s, 1e-300);
}

// Andrew's monotone chain; returns the counter-clockwise vertex cycle with
// collinear boundary points removed.
std::vector<Vec> monotone_chain(std::vector<Vec> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  pts.erase(std::unique(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) { return a == b; }),
            pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Vec> h(2 * pts.size());
  std::size_t k = 0;
  auto keeps_turning = [&](const Vec& o, const Vec& a, const Vec& b) {
    const double c = cross2(o, a, b);
    return c > 1e-12 * (a - o).norm() * (b - o).norm();
  };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && !keeps_turning(h[k - 2], h[k - 1], pts[i])) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && !keeps_turning(h[k - 2], h[k - 1], pts[i - 1])) --k;
    h[k++] = pts[i - 1];
  }
  h.resize(k - 1);
  return h;
}

struct Face {
  std::array<std::size_t, 3> v;
  Eigen::Vector3d normal;
  double offset;
  bool alive;
};

std::uint64_t edge_key(std::size_t a, std::size_t b) {
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

Face make_face(const std::vector<Eigen::Vector3d>& p, std::size_t a, std::size_t b, std::size_t c) {
  Eigen::Vector3d n = (p[b] - p[a]).cross(p[c] - p[a]);
  const double len = n.norm();
  if (len > 0.0) n /= len;
  return Face{{a, b, c}, n, n.dot(p[a]), true};
}

}  // namespace

ConvexHull ConvexHull::build(const std::vector<Vec>& points) {
  ConvexHull hull;
  if (points.empty()) {
    hull.rank_ = -1;
    return hull;
  }
  const auto dim = points.front().size();
  if (dim != 2 && dim != 3) throw DimensionError("convex hulls are supported in 2 and 3 dimensions only");
  for (const auto& p : points) {
    if (p.size() != dim) throw ShapeError("points of mixed dimension");
    if (!p.allFinite()) throw ParameterError("non-finite hull input");
  }
  hull.dimension_ = static_cast<int>(dim);
  const double tol = 1e-10 * scale_of(points);

  // Affine frame: farthest-point construction of an orthonormal basis.
  const std::size_t i0 = static_cast<std::size_t>(
      std::min_element(points.begin(), points.end(),
                       [](const Vec& a, const Vec& b) {
                         return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
                       }) -
      points.begin());
  const Vec origin = points[i0];
  Eigen::MatrixXd frame(dim, 0);
  std::vector<std::size_t> seeds{i0};
  while (frame.cols() < static_cast<Eigen::Index>(dim)) {
    double best = tol;
    std::size_t arg = points.size();
    for (std::size_t i = 0; i < points.size(); ++i) {
      Vec r = points[i] - origin;
      if (frame.cols() > 0) r -= frame * (frame.transpose() * r);
      const double d = r.norm();
      if (d > best) {
        best = d;
        arg = i;
      }
    }
    if (arg == points.size()) break;
    Vec r = points[arg] - origin;
    if (frame.cols() > 0) r -= frame * (frame.transpose() * r);
    frame.conservativeResize(Eigen::NoChange, frame.cols() + 1);
    frame.col(frame.cols() - 1) = r.normalized();
    seeds.push_back(arg);
  }
  hull.rank_ = static_cast<int>(frame.cols());
  hull.origin_ = origin;
  hull.frame_ = frame;

  if (hull.rank_ == 0) {
    hull.vertices_ = {origin};
    return hull;
  }
  if (hull.rank_ == 1) {
    double lo = 0.0, hi = 0.0;
    std::size_t ilo = i0, ihi = i0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double t = frame.col(0).dot(points[i] - origin);
      if (t < lo) lo = t, ilo = i;
      if (t > hi) hi = t, ihi = i;
    }
    hull.extent_lo_ = lo;
    hull.extent_hi_ = hi;
    hull.vertices_ = {points[ilo], points[ihi]};
    return hull;
  }
  if (hull.rank_ < static_cast<int>(dim)) {
    // Planar set in 3D: hull of the in-plane coordinates.
    std::vector<Vec> reduced;
    reduced.reserve(points.size());
    for (const auto& p : points) reduced.push_back(frame.transpose() * (p - origin));
    auto sub = std::make_shared<ConvexHull>(build(reduced));
    for (const auto& v : sub->vertices()) hull.vertices_.push_back(origin + frame * v);
    hull.reduced_ = std::move(sub);
    return hull;
  }

  if (dim == 2) {
    hull.vertices_ = monotone_chain(points);
    const std::size_t n = hull.vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec& a = hull.vertices_[i];
      const Vec& b = hull.vertices_[(i + 1) % n];
      Vec normal(2);
      normal << b[1] - a[1], a[0] - b[0];
      normal.normalize();
      hull.facets_.push_back({i, (i + 1) % n, 0});
      hull.normals_.push_back(normal);
      hull.offsets_.push_back(normal.dot(a));
    }
    return hull;
  }

  // Incremental (beneath-beyond) construction in 3D.
  std::vector<Eigen::Vector3d> p(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) p[i] = points[i].head<3>();
  std::vector<Face> faces;
  std::unordered_map<std::uint64_t, std::size_t> edges;
  auto add_face = [&](std::size_t a, std::size_t b, std::size_t c) {
    faces.push_back(make_face(p, a, b, c));
    const std::size_t id = faces.size() - 1;
    edges[edge_key(a, b)] = id;
    edges[edge_key(b, c)] = id;
    edges[edge_key(c, a)] = id;
  };
  {
    const auto [a, b, c, d] = std::array<std::size_t, 4>{seeds[0], seeds[1], seeds[2], seeds[3]};
    const Eigen::Vector3d centroid = (p[a] + p[b] + p[c] + p[d]) / 4.0;
    for (auto tri : {std::array<std::size_t, 3>{a, b, c}, {a, c, d}, {a, d, b}, {b, d, c}}) {
      Face f = make_face(p, tri[0], tri[1], tri[2]);
      if (f.normal.dot(centroid) - f.offset > 0.0) std::swap(tri[1], tri[2]);
      add_face(tri[0], tri[1], tri[2]);
    }
  }

  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 shuffle_rng(0x5eedULL);
  std::shuffle(order.begin(), order.end(), shuffle_rng);

  std::vector<std::size_t> alive{0, 1, 2, 3};
  std::vector<char> visible;
  std::vector<std::pair<std::size_t, std::size_t>> horizon;
  for (const std::size_t idx : order) {
    if (std::find(seeds.begin(), seeds.end(), idx) != seeds.end()) continue;
    const Eigen::Vector3d& q = p[idx];
    visible.assign(faces.size(), 0);
    bool any = false;
    for (const std::size_t f : alive) {
      if (faces[f].normal.dot(q) - faces[f].offset > tol) {
        visible[f] = 1;
        any = true;
      }
    }
    if (!any) continue;
    horizon.clear();
    for (const std::size_t f : alive) {
      if (!visible[f]) continue;
      const auto& v = faces[f].v;
      for (int e = 0; e < 3; ++e) {
        const std::size_t a = v[e], b = v[(e + 1) % 3];
        const auto twin = edges.find(edge_key(b, a));
        if (twin == edges.end() || !visible[twin->second]) horizon.emplace_back(a, b);
      }
    }
    for (const std::size_t f : alive) {
      if (!visible[f]) continue;
      faces[f].alive = false;
      const auto& v = faces[f].v;
      for (int e = 0; e < 3; ++e) {
        const auto it = edges.find(edge_key(v[e], v[(e + 1) % 3]));
        if (it != edges.end() && it->second == f) edges.erase(it);
      }
    }
    for (const auto& [a, b] : horizon) add_face(a, b, idx);
    std::vector<std::size_t> next;
    next.reserve(alive.size() + horizon.size());
    for (const std::size_t f : alive) {
      if (faces[f].alive) next.push_back(f);
    }
    for (std::size_t f = faces.size() - horizon.size(); f < faces.size(); ++f) next.push_back(f);
    alive = std::move(next);
  }

  std::unordered_map<std::size_t, std::size_t> remap;
  for (const std::size_t f : alive) {
    std::array<std::size_t, 3> tri{};
    for (int e = 0; e < 3; ++e) {
      const std::size_t v = faces[f].v[e];
      auto [it, inserted] = remap.emplace(v, hull.vertices_.size());
      if (inserted) hull.vertices_.push_back(points[v]);
      tri[e] = it->second;
    }
    hull.facets_.push_back(tri);
    hull.normals_.push_back(Vec(faces[f].normal));
    hull.offsets_.push_back(faces[f].offset);
  }
  return hull;
}

bool ConvexHull::contains(const Vec& point, double tolerance) const {
  if (rank_ < 0) return false;
  if (point.size() != dimension_) throw ShapeError("point dimension does not match hull");
  if (rank_ == dimension_) {
    for (std::size_t f = 0; f < normals_.size(); ++f) {
      if (normals_[f].dot(point) - offsets_[f] > tolerance) return false;
    }
    return true;
  }
  const Vec rel = point - origin_;
  const Vec coords = frame_.transpose() * rel;
  if ((rel - frame_ * coords).norm() > tolerance) return false;
  if (rank_ == 0) return true;
  if (rank_ == 1) return coords[0] >= extent_lo_ - tolerance && coords[0] <= extent_hi_ + tolerance;
  return reduced_->contains(coords, tolerance);
}

ConvexHull ConvexHull::slice(int axis, double value) const {
  if (dimension_ != 3 || rank_ != 3) throw DimensionError("slicing needs a full-dimensional 3D hull");
  if (axis < 0 || axis > 2) throw ParameterError("slice axis out of range");
  std::vector<Vec> cut;
  auto project = [&](const Vec& x) {
    Vec y(2);
    int j = 0;
    for (int i = 0; i < 3; ++i) {
      if (i != axis) y[j++] = x[i];
    }
    return y;
  };
  for (const auto& tri : facets_) {
    for (int e = 0; e < 3; ++e) {
      const Vec& a = vertices_[tri[e]];
      const Vec& b = vertices_[tri[(e + 1) % 3]];
      const double da = a[axis] - value;
      const double db = b[axis] - value;
      if (da == 0.0) cut.push_back(project(a));
      if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) {
        const double s = da / (da - db);
        cut.push_back(project(a + s * (b - a)));
      }
    }
  }
  return build(cut);
}

std::vector<Vec> convex_hull(const std::vector<Vec>& points) {
  if (points.empty()) throw ParameterError("convex hull of an empty set");
  return ConvexHull::build(points).vertices();
}

}  // namespace anoma
