#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "ftplane/error.hpp"

namespace ftplane {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 &operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2 &operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Vec2 &operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }
  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return a += b; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return a -= b; }
  friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
  friend constexpr Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

// Points and displacement vectors share a representation.
using Point2 = Vec2;

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
constexpr Vec2 perp(Vec2 v) { return {-v.y, v.x}; }
inline double length(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Point2 a, Point2 b) { return length(b - a); }
inline bool is_finite(Vec2 v) { return std::isfinite(v.x) && std::isfinite(v.y); }
inline double max_abs(Vec2 v) { return std::max(std::abs(v.x), std::abs(v.y)); }

constexpr bool lex_less(Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

// Absolute comparison tolerance shared by every predicate.
struct Tol {
  double eps = 1e-9;

  constexpr Tol() = default;
  explicit Tol(double e) : eps(e) {
    if (!(e > 0.0 && e < 1e-3)) {
      throw Error(ErrorCode::InvalidArgument, "tolerance must lie in (0, 1e-3)");
    }
  }
};

// max(1, largest coordinate magnitude): used to scale eps for predicates on
// coordinates far from the unit box.
inline double coordinate_scale(std::span<const Point2> points) {
  double s = 1.0;
  for (const auto &p : points) s = std::max(s, max_abs(p));
  return s;
}

/// Sign of (b - a) x (c - a), with |cross| <= eps * scale treated as zero.
inline int orient(Point2 a, Point2 b, Point2 c, Tol tol = {}) {
  const std::array<Point2, 3> pts{a, b, c};
  const double scale = coordinate_scale(pts);
  const double cr = cross(b - a, c - a);
  if (std::abs(cr) <= tol.eps * scale) return 0;
  return cr > 0 ? 1 : -1;
}

struct HalfPlane {
  Vec2 normal;
  double offset = 0.0;

  // normal . p <= offset, loosened by eps scaled to the normal length.
  bool contains(Point2 p, Tol tol = {}) const {
    return dot(normal, p) <= offset + tol.eps * std::max(1.0, length(normal));
  }
};

enum class RegionKind { Empty, Point, Segment, Polygon };

constexpr std::string_view to_string(RegionKind k) {
  switch (k) {
    case RegionKind::Empty: return "empty";
    case RegionKind::Point: return "point";
    case RegionKind::Segment: return "segment";
    case RegionKind::Polygon: return "polygon";
  }
  return "unknown";
}

// Convex region with canonical vertex order: a Segment lists its
// lexicographically smaller endpoint first; a Polygon is CCW from its
// lexicographically smallest vertex.
struct Region {
  RegionKind kind = RegionKind::Empty;
  std::vector<Point2> vertices;

  static Region empty() { return {}; }
  static Region point(Point2 p) { return {RegionKind::Point, {p}}; }
  static Region segment(Point2 a, Point2 b) {
    if (lex_less(b, a)) std::swap(a, b);
    return {RegionKind::Segment, {a, b}};
  }

  Point2 centroid() const {
    Point2 c;
    for (const auto &v : vertices) c += v;
    return vertices.empty() ? c : c / static_cast<double>(vertices.size());
  }
};

namespace detail {

inline std::vector<Point2> merge_close(std::vector<Point2> pts, double dist) {
  std::sort(pts.begin(), pts.end(), lex_less);
  std::vector<Point2> out;
  for (const auto &p : pts) {
    const bool dup = std::any_of(out.begin(), out.end(),
                                 [&](Point2 q) { return distance(p, q) <= dist; });
    if (!dup) out.push_back(p);
  }
  return out;
}

inline double distance_to_line(Point2 a, Point2 b, Point2 q) {
  const double len = distance(a, b);
  if (len == 0.0) return distance(a, q);
  return std::abs(cross(b - a, q - a)) / len;
}

inline double distance_to_segment(Point2 a, Point2 b, Point2 q) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(a, q);
  const double t = std::clamp(dot(q - a, ab) / len2, 0.0, 1.0);
  return distance(a + t * ab, q);
}

}  // namespace detail

/// Convex hull of a point set. Points closer than eps (scaled) are merged,
/// and near-collinear sets collapse to a Segment or a Point.
inline Region convex_hull(std::span<const Point2> points, Tol tol = {}) {
  if (points.empty()) throw Error(ErrorCode::EmptyInput, "convex_hull of no points");
  for (const auto &p : points) {
    if (!is_finite(p)) throw Error(ErrorCode::NonFinite, "convex_hull input is not finite");
  }
  const double merge = tol.eps * coordinate_scale(points);
  auto pts = detail::merge_close({points.begin(), points.end()}, merge);
  if (pts.size() == 1) return Region::point(pts.front());

  auto segment_hull = [&]() {
    const Point2 a = pts.front();
    Point2 far = a;
    for (const auto &p : pts) {
      if (distance(a, p) > distance(a, far)) far = p;
    }
    const Vec2 axis = far - a;
    double lo = 0.0, hi = 0.0;
    Point2 plo = a, phi = a;
    for (const auto &p : pts) {
      const double s = dot(p - a, axis);
      if (s < lo) lo = s, plo = p;
      if (s > hi) hi = s, phi = p;
    }
    return Region::segment(plo, phi);
  };

  {
    const Point2 a = pts.front();
    Point2 far = a;
    for (const auto &p : pts) {
      if (distance(a, p) > distance(a, far)) far = p;
    }
    const bool collinear = std::all_of(pts.begin(), pts.end(), [&](Point2 q) {
      return detail::distance_to_line(a, far, q) <= merge;
    });
    if (collinear) return segment_hull();
  }

  // Monotone chain. A vertex survives only if it is a strict left turn and
  // lies farther than the merge distance from the chord it would otherwise
  // be absorbed into.
  auto keeps = [&](Point2 a, Point2 b, Point2 c) {
    return orient(a, b, c, tol) > 0 && detail::distance_to_line(a, c, b) > merge;
  };
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && !keeps(hull[k - 2], hull[k - 1], pts[i])) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && !keeps(hull[k - 2], hull[k - 1], pts[i])) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3) return segment_hull();
  return {RegionKind::Polygon, std::move(hull)};
}

/// Intersection of half-planes, clipped against a box far larger than any
/// constraint offset. A result touching the box is reported as Unbounded.
inline Region intersect_halfplanes(std::span<const HalfPlane> hps, Tol tol = {}) {
  double scale = 1.0;
  for (const auto &h : hps) {
    const double n = length(h.normal);
    if (!(n > tol.eps)) throw Error(ErrorCode::InvalidArgument, "half-plane normal is degenerate");
    scale = std::max(scale, std::abs(h.offset) / n);
  }
  const double box = 1e4 * scale;
  // Enough slack to keep degenerate (point/segment) intersections alive
  // under rounding; far below the merge distance used to classify them.
  const double slack = 1e-2 * tol.eps * scale;

  std::vector<Point2> poly{{-box, -box}, {box, -box}, {box, box}, {-box, box}};
  std::vector<Point2> next;
  for (const auto &h : hps) {
    const double n = length(h.normal);
    const Vec2 u = h.normal / n;
    const double off = h.offset / n + slack;
    next.clear();
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Point2 p = poly[i];
      const Point2 q = poly[(i + 1) % poly.size()];
      const double dp = dot(u, p) - off;
      const double dq = dot(u, q) - off;
      if (dp <= 0.0) next.push_back(p);
      if ((dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0)) {
        next.push_back(p + (dp / (dp - dq)) * (q - p));
      }
    }
    poly.swap(next);
    if (poly.empty()) return Region::empty();
  }
  for (const auto &p : poly) {
    if (max_abs(p) > 0.5 * box) {
      throw Error(ErrorCode::Unbounded, "half-plane intersection is unbounded");
    }
  }
  Tol merge_tol = tol;
  merge_tol.eps = tol.eps * scale / coordinate_scale(poly);
  auto region = convex_hull(poly, merge_tol);

  // Clipping against the far box leaves rounding noise of order box * 1e-16
  // on every vertex. Re-solve each vertex from the two least parallel
  // constraint lines passing through it.
  const double near = tol.eps * scale;
  for (auto &p : region.vertices) {
    const HalfPlane *best_a = nullptr;
    const HalfPlane *best_b = nullptr;
    double best = 1e-6;
    for (std::size_t i = 0; i < hps.size(); ++i) {
      const double ni = length(hps[i].normal);
      if (std::abs(dot(hps[i].normal, p) - hps[i].offset) / ni > near) continue;
      for (std::size_t j = i + 1; j < hps.size(); ++j) {
        const double nj = length(hps[j].normal);
        if (std::abs(dot(hps[j].normal, p) - hps[j].offset) / nj > near) continue;
        const double c = std::abs(cross(hps[i].normal, hps[j].normal)) / (ni * nj);
        if (c > best) best = c, best_a = &hps[i], best_b = &hps[j];
      }
    }
    if (!best_a) continue;
    const Vec2 n1 = best_a->normal, n2 = best_b->normal;
    const double det = cross(n1, n2);
    const Point2 q{(best_a->offset * n2.y - best_b->offset * n1.y) / det,
                   (n1.x * best_b->offset - n2.x * best_a->offset) / det};
    if (distance(p, q) <= near) p = q;
  }
  return convex_hull(region.vertices, merge_tol);
}

/// True iff q lies on segment ab at distance > eps from both endpoints.
inline bool segment_interior_contains(Point2 a, Point2 b, Point2 q, Tol tol = {}) {
  const std::array<Point2, 3> pts{a, b, q};
  const double d = tol.eps * coordinate_scale(pts);
  if (detail::distance_to_line(a, b, q) > d) return false;
  const Vec2 ab = b - a;
  const double s = dot(q - a, ab);
  if (s < 0.0 || s > dot(ab, ab)) return false;
  return distance(a, q) > d && distance(b, q) > d;
}

/// Euclidean distance from q to a region (zero inside a polygon).
inline double distance_to_region(const Region &r, Point2 q) {
  switch (r.kind) {
    case RegionKind::Empty: return std::numeric_limits<double>::infinity();
    case RegionKind::Point: return distance(r.vertices[0], q);
    case RegionKind::Segment: return detail::distance_to_segment(r.vertices[0], r.vertices[1], q);
    case RegionKind::Polygon: {
      const auto &v = r.vertices;
      bool inside = true;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < v.size(); ++i) {
        const Point2 a = v[i], b = v[(i + 1) % v.size()];
        if (cross(b - a, q - a) < 0.0) inside = false;
        best = std::min(best, detail::distance_to_segment(a, b, q));
      }
      return inside ? 0.0 : best;
    }
  }
  return std::numeric_limits<double>::infinity();
}

/// Hausdorff distance between two finite vertex sets.
inline double vertex_hausdorff(std::span<const Point2> a, std::span<const Point2> b) {
  if (a.empty() || b.empty()) {
    return a.empty() && b.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  }
  auto directed = [](std::span<const Point2> from, std::span<const Point2> to) {
    double worst = 0.0;
    for (const auto &p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto &q : to) best = std::min(best, distance(p, q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace ftplane
