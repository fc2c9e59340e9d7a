#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ftplane/error.hpp"
#include "ftplane/geometry.hpp"
#include "ftplane/norm.hpp"
#include "ftplane/solver.hpp"
#include "ftplane/uniqueness.hpp"

namespace ftplane {

// Plane normed by the regular 2*lambda-gon with a vertex at angle 0.
struct LambdaPlane {
  int lambda = 0;
  PolygonalNorm norm;
};

inline LambdaPlane make_lambda_norm(int lambda, Tol tol = {}) {
  if (lambda < 2) throw Error(ErrorCode::LambdaTooSmall, "lambda must be at least 2");
  const auto half = static_cast<std::size_t>(lambda);
  std::vector<Point2> v(2 * half);
  for (std::size_t k = 0; k < half; ++k) {
    const double a = static_cast<double>(k) * std::numbers::pi / lambda;
    v[k] = {std::cos(a), std::sin(a)};
    v[k + half] = -v[k];
  }
  // cos(pi/2) is not exactly zero.
  if (lambda % 2 == 0) v[half / 2] = {0.0, 1.0}, v[half / 2 + half] = {0.0, -1.0};
  return {lambda, PolygonalNorm::make(v, tol)};
}

/// Uniqueness verdict for a lambda-plane, checked against the mod-3 law:
/// non-unique exactly when 3 divides lambda.
inline Verdict classify_lambda(int lambda, Tol tol = {}) {
  const auto plane = make_lambda_norm(lambda, tol);
  auto verdict = uniqueness_verdict(plane.norm);
  const bool expect_unique = lambda % 3 != 0;
  if (is_unique(verdict) != expect_unique) {
    throw Error(ErrorCode::InvariantViolation,
                "lambda = " + std::to_string(lambda) + " contradicts the mod-3 classification");
  }
  return verdict;
}

namespace detail {

// Interior angles at a, b, c; empty when the triangle is degenerate.
inline std::optional<std::array<double, 3>> triangle_angles(Point2 a, Point2 b, Point2 c, Tol tol) {
  if (orient(a, b, c, tol) == 0) return std::nullopt;
  auto at = [](Point2 p, Point2 q, Point2 r) {
    const Vec2 u = q - p, w = r - p;
    return std::atan2(std::abs(cross(u, w)), dot(u, w));
  };
  return std::array<double, 3>{at(a, b, c), at(b, c, a), at(c, a, b)};
}

inline std::optional<Point2> line_intersection(Point2 p, Vec2 d, Point2 q, Vec2 e) {
  const double den = cross(d, e);
  if (den == 0.0) return std::nullopt;
  return p + (cross(q - p, e) / den) * d;
}

}  // namespace detail

/// Euclidean point seeing every side of the triangle under 120 degrees.
/// Defined only when all interior angles are below 120 degrees; built by
/// joining each vertex to the apex of the equilateral triangle erected
/// outward on the opposite side.
inline std::optional<Point2> torricelli_point(Point2 a, Point2 b, Point2 c, Tol tol = {}) {
  const auto angles = detail::triangle_angles(a, b, c, tol);
  if (!angles) return std::nullopt;
  const double limit = 2.0 * std::numbers::pi / 3.0 - tol.eps;
  for (double ang : *angles) {
    if (!(ang < limit)) return std::nullopt;
  }
  auto apex = [](Point2 opposite, Point2 p, Point2 q) {
    const Point2 mid = 0.5 * (p + q);
    const Vec2 n = perp(q - p) * (std::sqrt(3.0) / 2.0);
    return dot(opposite - mid, n) > 0.0 ? mid - n : mid + n;
  };
  const Point2 a2 = apex(a, b, c);
  const Point2 b2 = apex(b, c, a);
  return detail::line_intersection(a, a2 - a, b, b2 - b);
}

/// Solution set for a triangle on a lambda-plane with 3 | lambda: a polygon
/// around the Torricelli point p when the directions x_i - p avoid the
/// polygon's vertices, else {p}. Computed from the cones of the edge
/// functionals at p and cross-checked against ft_solve.
inline FTSolution lambda_triangle_solution(const LambdaPlane &plane, Point2 x1, Point2 x2, Point2 x3) {
  if (plane.lambda % 3 != 0) {
    throw Error(ErrorCode::PreconditionViolated, "lambda must be divisible by 3");
  }
  const auto &norm = plane.norm;
  const auto p = torricelli_point(x1, x2, x3, norm.tol());
  if (!p) {
    throw Error(ErrorCode::PreconditionViolated,
                "triangle must be non-degenerate with all angles below 120 degrees");
  }
  const std::array<Point2, 3> pts{x1, x2, x3};

  FTSolution sol;
  sol.certificate.p = *p;
  std::size_t on_vertex = 0;
  for (const auto &x : pts) {
    // At a vertex take the flattening that follows it counterclockwise, the
    // same traversal direction for all three terminals.
    const auto element = classify_direction(norm, x - *p);
    Functional phi;
    if (const auto *v = std::get_if<VertexElement>(&element)) {
      ++on_vertex;
      phi = norm.dual(v->index);
    } else {
      phi = norm.dual(std::get<EdgeElement>(element).edge);
    }
    sol.certificate.functionals.push_back(phi);
    sol.cones.push_back(build_cone(norm, x, phi));
  }
  if (on_vertex != 0 && on_vertex != 3) {
    throw Error(ErrorCode::InvariantViolation, "directions from the Torricelli point are mixed");
  }
  Functional sum;
  for (const auto &f : sol.certificate.functionals) sum += f;
  if (length(sum.as_vec()) > detail::sum_tol(norm, 3)) {
    throw Error(ErrorCode::InvariantViolation, "edge functionals at the Torricelli point do not cancel");
  }
  sol.region = intersect_cones(sol.cones, norm.tol());
  sol.objective = objective(norm, pts, *p);

  const RegionKind expected = on_vertex == 0 ? RegionKind::Polygon : RegionKind::Point;
  if (sol.region.kind != expected) {
    throw Error(ErrorCode::InvariantViolation, "cone intersection has the wrong shape");
  }
  const auto generic = ft_solve(norm, pts);
  const double scale = coordinate_scale(pts);
  if (generic.region.kind != expected ||
      vertex_hausdorff(generic.region.vertices, sol.region.vertices) > 1e-8 * scale) {
    throw Error(ErrorCode::InvariantViolation, "generic solver disagrees with the Torricelli construction");
  }
  return sol;
}

}  // namespace ftplane
