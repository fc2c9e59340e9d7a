#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <variant>
#include <vector>

#include "ftplane/error.hpp"
#include "ftplane/geometry.hpp"

namespace ftplane {

// Linear functional v -> a * v.x + b * v.y on the plane.
struct Functional {
  double a = 0.0;
  double b = 0.0;

  constexpr double operator()(Vec2 v) const { return a * v.x + b * v.y; }
  constexpr Vec2 as_vec() const { return {a, b}; }
  static constexpr Functional from_vec(Vec2 v) { return {v.x, v.y}; }

  constexpr Functional &operator+=(Functional o) {
    a += o.a;
    b += o.b;
    return *this;
  }
  friend constexpr Functional operator+(Functional f, Functional g) { return f += g; }
  friend constexpr Functional operator-(Functional f, Functional g) { return {f.a - g.a, f.b - g.b}; }
  friend constexpr Functional operator-(Functional f) { return {-f.a, -f.b}; }
  friend constexpr Functional operator*(double s, Functional f) { return {s * f.a, s * f.b}; }
  friend constexpr bool operator==(Functional, Functional) = default;
};

// Point of the unit circle: a polygon vertex (zero type) or a point strictly
// inside edge k = [vertex k, vertex k+1] (first type).
struct VertexElement {
  std::size_t index = 0;
  friend bool operator==(const VertexElement &, const VertexElement &) = default;
};
struct EdgeElement {
  std::size_t edge = 0;
  double t = 0.5;
  friend bool operator==(const EdgeElement &, const EdgeElement &) = default;
};
using UnitCircleElement = std::variant<VertexElement, EdgeElement>;

// All unit functionals norming a direction: one point of the dual circle, or
// the closed dual edge between lo and hi.
struct UniqueFunctional {
  Functional phi;
};
struct FunctionalSegment {
  Functional lo;
  Functional hi;
};
using FunctionalSet = std::variant<UniqueFunctional, FunctionalSegment>;

/// Norm whose unit ball is a centrally symmetric convex polygon.
///
/// Vertices are stored CCW starting from the vertex with the smallest polar
/// angle in [0, 2pi). Edge k joins vertex k to vertex k+1 (mod m); its dual
/// vertex is the functional equal to 1 along that edge, and the dual edge of
/// primal vertex k is [dual k-1, dual k].
class PolygonalNorm {
 public:
  static PolygonalNorm make(std::span<const Point2> raw, Tol tol = {});

  std::size_t size() const { return vertices_.size(); }
  std::span<const Point2> vertices() const { return vertices_; }
  Point2 vertex(std::size_t k) const { return vertices_[k % vertices_.size()]; }
  std::span<const Functional> duals() const { return duals_; }
  Functional dual(std::size_t k) const { return duals_[k % duals_.size()]; }
  Tol tol() const { return tol_; }
  Point2 edge_point(std::size_t k, double t) const {
    return vertex(k) + t * (vertex(k + 1) - vertex(k));
  }
  // Largest Euclidean length among dual vertices; the objective's Lipschitz
  // constant per terminal.
  double dual_scale() const { return dual_scale_; }

  /// Index of the edge whose angular sector contains v (v != 0).
  std::size_t sector(Vec2 v) const {
    const double theta = wrap(std::atan2(v.y, v.x));
    const auto it = std::upper_bound(angles_.begin(), angles_.end() - 1, theta);
    return static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - angles_.begin() - 1));
  }

  double gauge(Vec2 v) const {
    if (v.x == 0.0 && v.y == 0.0) return 0.0;
    return std::max(0.0, duals_[sector(v)](v));
  }

  // Polar angle mapped into [angle of vertex 0, that + 2pi).
  double wrap(double theta) const {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    while (theta < angles_.front()) theta += two_pi;
    while (theta >= angles_.front() + two_pi) theta -= two_pi;
    return theta;
  }
  double vertex_angle(std::size_t k) const { return angles_[k]; }

 private:
  PolygonalNorm() = default;

  std::vector<Point2> vertices_;
  std::vector<Functional> duals_;
  std::vector<double> angles_;  // m + 1 entries; the last closes the turn
  double dual_scale_ = 1.0;
  Tol tol_;
};

inline PolygonalNorm PolygonalNorm::make(std::span<const Point2> raw, Tol tol) {
  const std::size_t m = raw.size();
  if (m % 2 != 0) throw Error(ErrorCode::OddVertexCount, "unit polygon needs an even vertex count");
  if (m < 4) throw Error(ErrorCode::NotConvex, "unit polygon needs at least 4 vertices");
  for (const auto &p : raw) {
    if (!is_finite(p)) throw Error(ErrorCode::NonFinite, "unit polygon vertex is not finite");
  }

  std::vector<Point2> v(raw.begin(), raw.end());
  double area2 = 0.0;
  for (std::size_t i = 0; i < m; ++i) area2 += cross(v[i], v[(i + 1) % m]);
  if (std::abs(area2) <= tol.eps * coordinate_scale(v)) {
    throw Error(ErrorCode::NotConvex, "unit polygon has no area");
  }
  if (area2 < 0.0) std::reverse(v.begin(), v.end());

  double turning = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const Point2 a = v[i], b = v[(i + 1) % m], c = v[(i + 2) % m];
    if (orient(a, b, c, tol) != 1) {
      throw Error(ErrorCode::NotConvex, "unit polygon is not strictly convex at a vertex");
    }
    turning += std::atan2(cross(b - a, c - b), dot(b - a, c - b));
  }
  if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-6) {
    throw Error(ErrorCode::NotConvex, "unit polygon is self-intersecting");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (orient(v[i], v[(i + 1) % m], Point2{}, tol) != 1) {
      throw Error(ErrorCode::OriginOutside, "origin is not strictly inside the unit polygon");
    }
  }
  const double sym_tol = tol.eps * coordinate_scale(v);
  for (std::size_t i = 0; i < m / 2; ++i) {
    if (distance(v[i + m / 2], -v[i]) > sym_tol) {
      throw Error(ErrorCode::NotSymmetric, "unit polygon is not centrally symmetric");
    }
  }

  constexpr double two_pi = 2.0 * std::numbers::pi;
  auto polar = [&](Point2 p) {
    double a = std::atan2(p.y, p.x);
    return a < 0.0 ? a + two_pi : a;
  };
  const auto start = std::min_element(v.begin(), v.end(), [&](Point2 a, Point2 b) {
    return polar(a) < polar(b);
  });
  std::rotate(v.begin(), start, v.end());

  PolygonalNorm n;
  n.tol_ = tol;
  n.vertices_ = std::move(v);
  n.angles_.resize(m + 1);
  n.angles_[0] = polar(n.vertices_[0]);
  for (std::size_t k = 1; k < m; ++k) {
    double a = polar(n.vertices_[k]);
    while (a <= n.angles_[k - 1]) a += two_pi;
    n.angles_[k] = a;
  }
  n.angles_[m] = n.angles_[0] + two_pi;
  n.duals_.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    const Point2 p = n.vertices_[k], q = n.vertices_[(k + 1) % m];
    const double det = cross(p, q);
    n.duals_[k] = {(q.y - p.y) / det, (p.x - q.x) / det};
    n.dual_scale_ = std::max(n.dual_scale_, length(n.duals_[k].as_vec()));
  }
  return n;
}

inline PolygonalNorm make_polygonal_norm(std::span<const Point2> vertices, Tol tol = {}) {
  return PolygonalNorm::make(vertices, tol);
}

inline double gauge(const PolygonalNorm &norm, Vec2 v) { return norm.gauge(v); }

inline std::vector<Functional> dual_vertices(const PolygonalNorm &norm) {
  return {norm.duals().begin(), norm.duals().end()};
}

inline double dual_norm(const PolygonalNorm &norm, Functional phi) {
  double best = 0.0;
  for (const auto &v : norm.vertices()) best = std::max(best, phi(v));
  return best;
}

/// Where the ray through v meets the unit circle. Directions within eps
/// radians of a vertex snap to it.
inline UnitCircleElement classify_direction(const PolygonalNorm &norm, Vec2 v) {
  if (!(length(v) > 0.0) || !is_finite(v)) {
    throw Error(ErrorCode::ZeroVector, "cannot classify the zero vector");
  }
  const std::size_t m = norm.size();
  const std::size_t k = norm.sector(v);
  const double theta = norm.wrap(std::atan2(v.y, v.x));
  const double eps = norm.tol().eps;
  if (theta - norm.vertex_angle(k) <= eps) return VertexElement{k};
  if (norm.vertex_angle(k + 1) - theta <= eps) return VertexElement{(k + 1) % m};
  const Point2 hat = v / norm.gauge(v);
  const Vec2 edge = norm.vertex(k + 1) - norm.vertex(k);
  const double t = dot(hat - norm.vertex(k), edge) / dot(edge, edge);
  return EdgeElement{k, std::clamp(t, std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0))};
}

inline FunctionalSet norming_set(const PolygonalNorm &norm, Vec2 v) {
  const auto element = classify_direction(norm, v);
  if (const auto *e = std::get_if<EdgeElement>(&element)) {
    return UniqueFunctional{norm.dual(e->edge)};
  }
  const std::size_t k = std::get<VertexElement>(element).index;
  return FunctionalSegment{norm.dual(k + norm.size() - 1), norm.dual(k)};
}

// The point of the unit circle an element denotes.
inline Point2 element_point(const PolygonalNorm &norm, const UnitCircleElement &e) {
  if (const auto *v = std::get_if<VertexElement>(&e)) return norm.vertex(v->index);
  const auto &edge = std::get<EdgeElement>(e);
  return norm.edge_point(edge.edge, edge.t);
}

}  // namespace ftplane
