#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>

#include "ftplane/error.hpp"
#include "ftplane/geometry.hpp"
#include "ftplane/norm.hpp"
#include "ftplane/solver.hpp"

namespace ftplane {

// Three unit-circle elements with support-line functionals summing to zero.
// `condition` is the non-uniqueness condition the triple realizes:
//   1 - three edge-interior elements,
//   2 - two edge-interior elements and one vertex,
//   3 - one edge-interior element and a pair of opposite vertices.
struct ConsistentTriple {
  std::array<UnitCircleElement, 3> elements;
  std::array<Functional, 3> functionals;
  int condition = 0;
};

struct UniqueForAllTriples {};

struct NonUnique {
  ConsistentTriple triple;
  std::array<Point2, 3> witness;
  RegionKind expected = RegionKind::Segment;
  FTSolution solution;  // ft_solve applied to the witness
};

using Verdict = std::variant<UniqueForAllTriples, NonUnique>;

namespace detail {

inline double triple_tol(const PolygonalNorm &norm) {
  return 4.0 * norm.tol().eps * norm.dual_scale();
}

}  // namespace detail

inline std::optional<ConsistentTriple> check_condition1(const PolygonalNorm &norm) {
  const std::size_t m = norm.size();
  const double tol = detail::triple_tol(norm);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      for (std::size_t k = j + 1; k < m; ++k) {
        const Functional s = norm.dual(i) + norm.dual(j) + norm.dual(k);
        if (length(s.as_vec()) <= tol) {
          return ConsistentTriple{{EdgeElement{i, 0.5}, EdgeElement{j, 0.5}, EdgeElement{k, 0.5}},
                                  {norm.dual(i), norm.dual(j), norm.dual(k)},
                                  1};
        }
      }
    }
  }
  return std::nullopt;
}

inline std::optional<ConsistentTriple> check_condition2(const PolygonalNorm &norm) {
  const std::size_t m = norm.size();
  Tol tol = norm.tol();
  tol.eps = detail::triple_tol(norm);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const Functional psi = -(norm.dual(i) + norm.dual(j));
      for (std::size_t k = 0; k < m; ++k) {
        const Functional lo = norm.dual(k + m - 1);
        const Functional hi = norm.dual(k);
        if (segment_interior_contains(lo.as_vec(), hi.as_vec(), psi.as_vec(), tol)) {
          return ConsistentTriple{{EdgeElement{i, 0.5}, EdgeElement{j, 0.5}, VertexElement{k}},
                                  {norm.dual(i), norm.dual(j), psi},
                                  2};
        }
      }
    }
  }
  return std::nullopt;
}

/// An edge functional phi completes a consistent triple with the opposite
/// vertices +-v exactly when phi = t * u, 0 < |t| < 1, where u spans the dual
/// edge of v.
inline std::optional<ConsistentTriple> check_condition3(const PolygonalNorm &norm) {
  const std::size_t m = norm.size();
  const double tol = detail::triple_tol(norm);
  for (std::size_t e = 0; e < m; ++e) {
    const Functional phi = norm.dual(e);
    for (std::size_t k = 0; k < m / 2; ++k) {
      const Functional lo = norm.dual(k + m - 1);
      const Vec2 u = (norm.dual(k) - lo).as_vec();
      const double uu = dot(u, u);
      if (std::abs(cross(phi.as_vec(), u)) > tol * length(u)) continue;
      const double t = dot(phi.as_vec(), u) / uu;
      if (std::abs(t) >= 1.0 - tol || std::abs(t) <= tol) continue;
      const double s = 0.5 * (1.0 - t);
      const double s_opp = 0.5 * (1.0 + t);
      const Functional psi1 = Functional::from_vec(lo.as_vec() + s * u);
      const Functional psi2 = -Functional::from_vec(lo.as_vec() + s_opp * u);
      return ConsistentTriple{{EdgeElement{e, 0.5}, VertexElement{k}, VertexElement{k + m / 2}},
                              {phi, psi1, psi2},
                              3};
    }
  }
  return std::nullopt;
}

// Witness terminals: the unit-circle elements themselves.
inline std::array<Point2, 3> witness_points(const PolygonalNorm &norm, const ConsistentTriple &t) {
  return {element_point(norm, t.elements[0]), element_point(norm, t.elements[1]),
          element_point(norm, t.elements[2])};
}

inline RegionKind expected_kind(int condition) {
  return condition == 1 ? RegionKind::Polygon : RegionKind::Segment;
}

/// Solves the witness of a consistent triple; throws WitnessFailed if the
/// solution set is a single point.
inline NonUnique realize_triple(const PolygonalNorm &norm, const ConsistentTriple &triple) {
  NonUnique out{triple, witness_points(norm, triple), expected_kind(triple.condition), {}};
  out.solution = ft_solve(norm, out.witness);
  if (out.solution.region.kind == RegionKind::Point || out.solution.region.kind == RegionKind::Empty) {
    throw Error(ErrorCode::WitnessFailed,
                "condition " + std::to_string(triple.condition) + " witness has a unique solution");
  }
  return out;
}

/// Three-point uniqueness criterion: unique for every triple iff none of the
/// three non-uniqueness conditions holds. Conditions are tried in order.
inline Verdict uniqueness_verdict(const PolygonalNorm &norm) {
  auto triple = check_condition1(norm);
  if (!triple) triple = check_condition2(norm);
  if (!triple) triple = check_condition3(norm);
  if (!triple) return UniqueForAllTriples{};
  return realize_triple(norm, *triple);
}

inline bool is_unique(const Verdict &v) { return std::holds_alternative<UniqueForAllTriples>(v); }

}  // namespace ftplane
