#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "ftplane/error.hpp"
#include "ftplane/geometry.hpp"
#include "ftplane/norm.hpp"

// Brute-force checks that share no code path with the solver beyond the
// norm's vertex list.
namespace ftplane::oracle {

struct Box {
  Point2 lo;
  Point2 hi;
};

struct GridSpec {
  std::optional<Box> bbox;  // default: terminal bounding box grown by one unit ball
  int resolution = 400;
  int refine_rounds = 3;
};

struct GridResult {
  Point2 point;
  double value = 0.0;
  double cell_diameter = 0.0;  // of the finest grid
};

// Gauge as the support-function maximum over edge functionals, rebuilt here
// from the vertices rather than taken from the norm.
inline double gauge_by_support(std::span<const Functional> support, Vec2 v) {
  double g = 0.0;
  for (const auto &f : support) g = std::max(g, f(v));
  return g;
}

inline std::vector<Functional> support_functionals(const PolygonalNorm &norm) {
  std::vector<Functional> out;
  const auto verts = norm.vertices();
  for (std::size_t k = 0; k < verts.size(); ++k) {
    const Point2 p = verts[k], q = verts[(k + 1) % verts.size()];
    // Line through p and q: n . x = n . p with n pointing away from the origin.
    const Vec2 n{q.y - p.y, p.x - q.x};
    out.push_back(Functional::from_vec(n / dot(n, p)));
  }
  return out;
}

inline double objective(std::span<const Functional> support, std::span<const Point2> points, Point2 x) {
  double s = 0.0;
  for (const auto &p : points) s += gauge_by_support(support, x - p);
  return s;
}

/// Uniform grid search refined by zooming 10x around the incumbent.
inline GridResult grid_minimize(const PolygonalNorm &norm, std::span<const Point2> points,
                                const GridSpec &spec = {}) {
  if (points.empty()) throw Error(ErrorCode::EmptyInput, "no terminals");
  if (spec.resolution < 8) throw Error(ErrorCode::InvalidArgument, "grid resolution must be >= 8");
  const auto support = support_functionals(norm);

  Box box;
  if (spec.bbox) {
    box = *spec.bbox;
  } else {
    double r = 0.0;
    for (const auto &v : norm.vertices()) r = std::max(r, max_abs(v));
    box = {points[0], points[0]};
    for (const auto &p : points) {
      box.lo = {std::min(box.lo.x, p.x), std::min(box.lo.y, p.y)};
      box.hi = {std::max(box.hi.x, p.x), std::max(box.hi.y, p.y)};
    }
    box.lo -= Vec2{r, r};
    box.hi += Vec2{r, r};
  }

  GridResult best{points[0], std::numeric_limits<double>::infinity(), 0.0};
  for (int round = 0; round <= spec.refine_rounds; ++round) {
    const double hx = (box.hi.x - box.lo.x) / spec.resolution;
    const double hy = (box.hi.y - box.lo.y) / spec.resolution;
    for (int i = 0; i <= spec.resolution; ++i) {
      for (int j = 0; j <= spec.resolution; ++j) {
        const Point2 x{box.lo.x + i * hx, box.lo.y + j * hy};
        const double f = objective(support, points, x);
        if (f < best.value) best.value = f, best.point = x;
      }
    }
    best.cell_diameter = std::hypot(hx, hy);
    const Vec2 half{0.05 * (box.hi.x - box.lo.x), 0.05 * (box.hi.y - box.lo.y)};
    box = {best.point - half, best.point + half};
  }
  return best;
}

struct ProbeReport {
  double reference = 0.0;             // smallest objective among inside samples
  double max_inside_deviation = 0.0;  // spread of the objective over the region
  double min_outside_excess = 0.0;    // smallest rise just outside the region
  std::size_t inside_samples = 0;
  std::size_t outside_samples = 0;
};

/// Samples the region (vertices, edge midpoints, random convex combinations)
/// and points pushed `delta` outside it along outward normals.
inline ProbeReport probe_solution_set(const PolygonalNorm &norm, std::span<const Point2> points,
                                      const Region &region, std::size_t samples,
                                      double delta = 1e-6, unsigned seed = 7) {
  if (region.kind == RegionKind::Empty) throw Error(ErrorCode::InvalidArgument, "empty region");
  const auto support = support_functionals(norm);
  const auto &v = region.vertices;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<Point2> inside(v.begin(), v.end());
  std::vector<Point2> outside;
  auto push_out = [&](Point2 at, Vec2 dir) { outside.push_back(at + (delta / length(dir)) * dir); };

  switch (region.kind) {
    case RegionKind::Point:
      for (int k = 0; k < 16; ++k) {
        const double a = k * std::numbers::pi / 8.0;
        push_out(v[0], {std::cos(a), std::sin(a)});
      }
      break;
    case RegionKind::Segment: {
      const Vec2 axis = v[1] - v[0];
      const Vec2 n = perp(axis);
      for (double s : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const Point2 q = v[0] + s * axis;
        if (s != 0.0 && s != 1.0) inside.push_back(q);
        push_out(q, n);
        push_out(q, -n);
      }
      push_out(v[0], -axis);
      push_out(v[1], axis);
      for (std::size_t k = 0; k < samples; ++k) inside.push_back(v[0] + unit(rng) * axis);
      break;
    }
    case RegionKind::Polygon: {
      const std::size_t m = v.size();
      for (std::size_t i = 0; i < m; ++i) {
        const Point2 a = v[i], b = v[(i + 1) % m];
        const Vec2 out{b.y - a.y, a.x - b.x};  // outward for CCW order
        inside.push_back(0.5 * (a + b));
        for (double s : {0.25, 0.5, 0.75}) push_out(a + s * (b - a), out);
        const Point2 prev = v[(i + m - 1) % m];
        const Vec2 out_prev{a.y - prev.y, prev.x - a.x};
        push_out(a, out / length(out) + out_prev / length(out_prev));
      }
      for (std::size_t k = 0; k < samples; ++k) {
        std::vector<double> w(m);
        double total = 0.0;
        for (auto &x : w) total += (x = -std::log(1.0 - unit(rng)));
        Point2 q;
        for (std::size_t i = 0; i < m; ++i) q += (w[i] / total) * v[i];
        inside.push_back(q);
      }
      break;
    }
    case RegionKind::Empty: break;
  }

  ProbeReport rep;
  rep.inside_samples = inside.size();
  rep.outside_samples = outside.size();
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto &q : inside) {
    const double f = objective(support, points, q);
    lo = std::min(lo, f);
    hi = std::max(hi, f);
  }
  rep.reference = lo;
  rep.max_inside_deviation = hi - lo;
  rep.min_outside_excess = std::numeric_limits<double>::infinity();
  for (const auto &q : outside) {
    rep.min_outside_excess = std::min(rep.min_outside_excess, objective(support, points, q) - lo);
  }
  return rep;
}

/// Seeded random centrally symmetric polygon: half the vertices drawn with
/// angles in [0, pi) and radii in [0.5, 1.5], mirrored, then hulled.
template <class Rng>
PolygonalNorm random_symmetric_norm(Rng &rng, int min_vertices = 4, int max_vertices = 20) {
  std::uniform_int_distribution<int> half_count(min_vertices / 2, max_vertices / 2);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  std::uniform_real_distribution<double> radius(0.5, 1.5);
  for (;;) {
    const int half = half_count(rng);
    std::vector<Point2> pts;
    for (int i = 0; i < half; ++i) {
      const double a = angle(rng), r = radius(rng);
      pts.push_back({r * std::cos(a), r * std::sin(a)});
      pts.push_back(-pts.back());
    }
    const auto hull = convex_hull(pts);
    if (hull.kind != RegionKind::Polygon || hull.vertices.size() < 4 ||
        hull.vertices.size() < static_cast<std::size_t>(min_vertices)) {
      continue;
    }
    try {
      return PolygonalNorm::make(hull.vertices);
    } catch (const Error &) {
      // Hull lost exact symmetry or convexity under rounding: resample.
    }
  }
}

template <class Rng>
std::vector<Point2> random_points(Rng &rng, std::size_t n, double lo = -5.0, double hi = 5.0) {
  std::uniform_real_distribution<double> coord(lo, hi);
  std::vector<Point2> pts(n);
  for (auto &p : pts) p = {coord(rng), coord(rng)};
  return pts;
}

}  // namespace ftplane::oracle
