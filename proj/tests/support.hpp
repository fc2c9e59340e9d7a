#pragma once

// Fixtures and independent reference computations shared by the test suites.
// Nothing here calls into the solver.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "ftplane/ftplane.hpp"

namespace ftplane::testing {

inline const double kSqrt3 = std::sqrt(3.0);

inline PolygonalNorm diamond() {
  const std::vector<Point2> v{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return PolygonalNorm::make(v);
}

inline PolygonalNorm square() {
  const std::vector<Point2> v{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
  return PolygonalNorm::make(v);
}

inline PolygonalNorm hexagon() { return make_lambda_norm(3).norm; }
inline PolygonalNorm octagon() { return make_lambda_norm(4).norm; }

// Long horizontal flattening from (-2,1) to (2,1); the dual edge at vertex
// (6,0) is vertical, parallel to the top edge functional (0,1).
inline PolygonalNorm skew_hexagon() {
  const std::vector<Point2> v{{6, 0}, {2, 1}, {-2, 1}, {-6, 0}, {-2, -1}, {2, -1}};
  return PolygonalNorm::make(v);
}

inline std::vector<Point2> unit_triangle() { return {{0.0, 0.0}, {1.0, 0.0}, {0.5, kSqrt3 / 2.0}}; }

// Gauge of the unit ball conv(vertices) computed as the smallest t with
// v = t * (boundary point), by bisection on membership. Membership uses the
// half-planes through consecutive vertex pairs, recomputed from scratch.
inline double bisect_gauge(std::span<const Point2> verts, Vec2 v) {
  auto inside = [&](Vec2 q) {
    for (std::size_t k = 0; k < verts.size(); ++k) {
      const Point2 a = verts[k], b = verts[(k + 1) % verts.size()];
      if (cross(b - a, q - a) < -1e-15) return false;
    }
    return true;
  };
  if (v.x == 0.0 && v.y == 0.0) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (!inside(v / hi)) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (inside(v / mid) ? hi : lo) = mid;
  }
  return hi;
}

// L1 objective in closed form.
inline double l1_sum(std::span<const Point2> pts, Point2 x) {
  double s = 0.0;
  for (const auto &p : pts) s += std::abs(x.x - p.x) + std::abs(x.y - p.y);
  return s;
}

// Coordinate-wise median interval: the L1 (diamond) optimum set is the box
// [x_lo, x_hi] x [y_lo, y_hi] of the per-coordinate median intervals.
inline std::array<double, 4> l1_median_box(std::span<const Point2> pts) {
  std::vector<double> xs, ys;
  for (const auto &p : pts) xs.push_back(p.x), ys.push_back(p.y);
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  const std::size_t n = pts.size();
  if (n % 2 == 1) return {xs[n / 2], xs[n / 2], ys[n / 2], ys[n / 2]};
  return {xs[n / 2 - 1], xs[n / 2], ys[n / 2 - 1], ys[n / 2]};
}

// Euclidean geometric median by Weiszfeld iteration.
inline Point2 weiszfeld(std::span<const Point2> pts, int iters = 20000) {
  Point2 x;
  for (const auto &p : pts) x += p;
  x = x / static_cast<double>(pts.size());
  for (int it = 0; it < iters; ++it) {
    Point2 num;
    double den = 0.0;
    for (const auto &p : pts) {
      const double d = std::max(distance(x, p), 1e-300);
      num += p / d;
      den += 1.0 / d;
    }
    x = num / den;
  }
  return x;
}

inline double viewing_angle(Point2 t, Point2 a, Point2 b) {
  const Vec2 u = a - t, w = b - t;
  return std::atan2(std::abs(cross(u, w)), dot(u, w));
}

inline Point2 rotate_about(Point2 p, Point2 c, double a) {
  const Vec2 d = p - c;
  return c + Vec2{std::cos(a) * d.x - std::sin(a) * d.y, std::sin(a) * d.x + std::cos(a) * d.y};
}

// Applies the linear map with columns c1, c2 to every vertex.
inline std::vector<Point2> linear_image(std::span<const Point2> v, Vec2 c1, Vec2 c2) {
  std::vector<Point2> out;
  for (const auto &p : v) out.push_back(p.x * c1 + p.y * c2);
  return out;
}

inline std::vector<Point2> sorted_vertices(const Region &r) {
  auto v = r.vertices;
  std::sort(v.begin(), v.end(), lex_less);
  return v;
}

}  // namespace ftplane::testing
