#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ftplane/error.hpp"
#include "ftplane/geometry.hpp"
#include "ftplane/norm.hpp"
#include "ftplane/zonotope.hpp"

namespace ftplane {

struct Ray {
  Vec2 dir;
};
// Closed angle swept CCW from `first` to `second`; the sweep is below pi.
struct Angle {
  Vec2 first;
  Vec2 second;
};
using ConeShape = std::variant<Ray, Angle>;

// apex - {a : phi(a) = |a|} for a unit functional phi.
struct Cone {
  Point2 apex;
  ConeShape shape;
};

// Optimality witness at p: one functional per terminal summing to zero.
// Entries for terminals that coincide with p hold the completing
// subgradient, whose dual norm is at most 1 instead of exactly 1.
struct Certificate {
  Point2 p;
  std::vector<Functional> functionals;
};

struct FTSolution {
  Region region;
  double objective = 0.0;
  Certificate certificate;
  std::vector<Cone> cones;  // empty when the optimum is a terminal
};

struct CandidateSet {
  std::vector<Point2> argmin;
  double value = 0.0;
};

struct SelectionOptions {
  // Preferred position inside each norming segment (0 = lo, 1 = hi), indexed
  // by terminal. Empty means 0.5 everywhere.
  std::vector<double> center;
};

struct SolveOptions {
  bool collinear_shortcut = true;
};

inline double objective(const PolygonalNorm &norm, std::span<const Point2> points, Point2 x) {
  double s = 0.0;
  for (const auto &p : points) s += norm.gauge(x - p);
  return s;
}

namespace detail {

inline double scale_of(std::span<const Point2> points) { return coordinate_scale(points); }

inline double value_tol(const PolygonalNorm &norm, double value) {
  return norm.tol().eps * (1.0 + std::abs(value));
}

inline double sum_tol(const PolygonalNorm &norm, std::size_t n) {
  return 4.0 * norm.tol().eps * norm.dual_scale() * static_cast<double>(n + 1);
}

inline std::vector<std::size_t> coincident(std::span<const Point2> points, Point2 p, double tol) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (distance(points[i], p) <= tol) out.push_back(i);
  }
  return out;
}

// Core of verify_ft_point / select_functionals. Terminals within the merge
// distance of p are relaxed: their functionals only need dual norm <= 1,
// which is encoded by appending the dual unit ball (itself a zonotope) scaled
// by their count.
inline std::optional<Certificate> certify(const PolygonalNorm &norm, std::span<const Point2> points,
                                          Point2 p, const SelectionOptions &opts) {
  const std::size_t n = points.size();
  std::vector<Point2> all(points.begin(), points.end());
  all.push_back(p);
  const double near = norm.tol().eps * scale_of(all);
  const auto at_p = coincident(points, p, near);
  std::vector<bool> relaxed(n, false);
  for (auto i : at_p) relaxed[i] = true;

  std::vector<zonotope::Segment> segs;
  std::vector<double> center;
  std::vector<std::size_t> owner;  // terminal index per norming segment
  for (std::size_t i = 0; i < n; ++i) {
    if (relaxed[i]) continue;
    const auto set = norming_set(norm, points[i] - p);
    if (const auto *u = std::get_if<UniqueFunctional>(&set)) {
      segs.push_back({u->phi.as_vec(), {}});
    } else {
      const auto &s = std::get<FunctionalSegment>(set);
      segs.push_back({s.lo.as_vec(), (s.hi - s.lo).as_vec()});
    }
    center.push_back(opts.center.empty() ? 0.5 : opts.center[i]);
    owner.push_back(i);
  }
  const std::size_t norming_count = segs.size();
  if (!at_p.empty()) {
    const double c = static_cast<double>(at_p.size());
    const std::size_t half = norm.size() / 2;
    segs.push_back({c * norm.dual(0).as_vec(), {}});
    for (std::size_t k = 0; k < half; ++k) {
      segs.push_back({{}, c * (norm.dual(k + 1) - norm.dual(k)).as_vec()});
    }
    center.resize(segs.size(), 0.5);
  }

  const double tol = sum_tol(norm, n);
  auto coef = zonotope::find_coefficients(segs, {}, tol);
  if (!coef) return std::nullopt;
  auto t = zonotope::project_within_fiber(segs, std::move(*coef), center);
  if (length(zonotope::evaluate(segs, t)) > tol) return std::nullopt;

  Certificate cert{p, std::vector<Functional>(n)};
  Functional sum;
  for (std::size_t j = 0; j < norming_count; ++j) {
    const auto phi = Functional::from_vec(segs[j].base + t[j] * segs[j].dir);
    cert.functionals[owner[j]] = phi;
    sum += phi;
  }
  if (!at_p.empty()) {
    const auto rest = (-1.0 / static_cast<double>(at_p.size())) * sum;
    if (dual_norm(norm, rest) > 1.0 + tol) return std::nullopt;
    for (auto i : at_p) cert.functionals[i] = rest;
  }
  return cert;
}

}  // namespace detail

/// Every optimal point's extreme points lie on the arrangement of lines
/// through each terminal in each unit-vertex direction; evaluates the
/// objective on terminals and on all pairwise line intersections.
inline CandidateSet candidate_minimize(const PolygonalNorm &norm, std::span<const Point2> points) {
  if (points.empty()) throw Error(ErrorCode::EmptyInput, "no terminals");
  struct Line {
    Point2 at;
    Vec2 dir;
    std::size_t terminal;
  };
  std::vector<Line> lines;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t k = 0; k < norm.size() / 2; ++k) lines.push_back({points[i], norm.vertex(k), i});
  }
  std::vector<Point2> cand(points.begin(), points.end());
  for (std::size_t a = 0; a < lines.size(); ++a) {
    for (std::size_t b = a + 1; b < lines.size(); ++b) {
      const auto &la = lines[a];
      const auto &lb = lines[b];
      if (la.terminal == lb.terminal) continue;
      const double den = cross(la.dir, lb.dir);
      if (std::abs(den) <= 1e-12 * length(la.dir) * length(lb.dir)) continue;
      cand.push_back(la.at + (cross(lb.at - la.at, lb.dir) / den) * la.dir);
    }
  }
  std::vector<double> val(cand.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cand.size(); ++i) {
    val[i] = objective(norm, points, cand[i]);
    best = std::min(best, val[i]);
  }
  const double vt = detail::value_tol(norm, best);
  std::vector<Point2> arg;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    if (val[i] <= best + vt) arg.push_back(cand[i]);
  }
  const double merge = norm.tol().eps * detail::scale_of(points);
  return {detail::merge_close(std::move(arg), merge), best};
}

/// Optimality test at p. Off the terminals: 0 must be a sum of one norming
/// functional per terminal. At a terminal: the remaining functionals must sum
/// to something of dual norm <= 1.
inline std::optional<Certificate> verify_ft_point(const PolygonalNorm &norm,
                                                  std::span<const Point2> points, Point2 p) {
  if (points.empty()) throw Error(ErrorCode::EmptyInput, "no terminals");
  return detail::certify(norm, points, p, {});
}

/// Unit norming functionals for x_i - p summing to zero; p must not be a
/// terminal. Among all valid selections returns the one whose segment
/// parameters are nearest to opts.center.
inline std::vector<Functional> select_functionals(const PolygonalNorm &norm,
                                                  std::span<const Point2> points, Point2 p,
                                                  const SelectionOptions &opts = {}) {
  if (points.empty()) throw Error(ErrorCode::EmptyInput, "no terminals");
  if (!opts.center.empty() && opts.center.size() != points.size()) {
    throw Error(ErrorCode::InvalidArgument, "selection center needs one entry per terminal");
  }
  std::vector<Point2> all(points.begin(), points.end());
  all.push_back(p);
  if (!detail::coincident(points, p, norm.tol().eps * detail::scale_of(all)).empty()) {
    throw Error(ErrorCode::PreconditionViolated, "select_functionals needs p outside the terminals");
  }
  auto cert = detail::certify(norm, points, p, opts);
  if (!cert) throw Error(ErrorCode::Infeasible, "no norming functionals at p sum to zero");
  return std::move(cert->functionals);
}

inline Cone build_cone(const PolygonalNorm &norm, Point2 apex, Functional phi) {
  const double tol = 4.0 * norm.tol().eps * norm.dual_scale();
  if (std::abs(dual_norm(norm, phi) - 1.0) > tol) {
    throw Error(ErrorCode::NotUnitFunctional, "cone functional must have dual norm 1");
  }
  const std::size_t m = norm.size();
  std::vector<std::size_t> contact;
  for (std::size_t k = 0; k < m; ++k) {
    if (phi(norm.vertex(k)) >= 1.0 - tol) contact.push_back(k);
  }
  if (contact.size() == 1) return {apex, Ray{-norm.vertex(contact[0])}};
  if (contact.size() == 2) {
    std::size_t a = contact[0], b = contact[1];
    if (a == 0 && b == m - 1) std::swap(a, b);
    if ((a + 1) % m == b) return {apex, Angle{-norm.vertex(a), -norm.vertex(b)}};
  }
  throw Error(ErrorCode::NotUnitFunctional, "functional touches the unit polygon in a non-face");
}

/// Intersection of cones. With any ray present the ray is clipped
/// parametrically by every other cone; otherwise each angle becomes two
/// half-planes.
inline Region intersect_cones(std::span<const Cone> cones, Tol tol = {}) {
  if (cones.empty()) throw Error(ErrorCode::EmptyInput, "no cones");
  std::vector<Point2> apexes;
  for (const auto &c : cones) apexes.push_back(c.apex);
  const double scale = coordinate_scale(apexes);
  const double len_tol = tol.eps * scale;
  const double slack = 1e-3 * len_tol;

  auto angle_halfplanes = [](const Cone &c, const Angle &a) {
    const Vec2 n1{a.first.y, -a.first.x};
    const Vec2 n2 = perp(a.second);
    return std::array<HalfPlane, 2>{HalfPlane{n1, dot(n1, c.apex)}, HalfPlane{n2, dot(n2, c.apex)}};
  };

  const auto ray_it = std::find_if(cones.begin(), cones.end(), [](const Cone &c) {
    return std::holds_alternative<Ray>(c.shape);
  });
  if (ray_it == cones.end()) {
    std::vector<HalfPlane> hps;
    for (const auto &c : cones) {
      const auto hp = angle_halfplanes(c, std::get<Angle>(c.shape));
      hps.insert(hps.end(), hp.begin(), hp.end());
    }
    auto region = intersect_halfplanes(hps, tol);
    if (region.kind == RegionKind::Empty) {
      throw Error(ErrorCode::EmptyIntersection, "cones do not meet");
    }
    return region;
  }

  const Point2 v = ray_it->apex;
  const Vec2 d = std::get<Ray>(ray_it->shape).dir / length(std::get<Ray>(ray_it->shape).dir);
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  bool empty = false;
  // coef * t <= rhs
  auto bound = [&](double coef, double rhs) {
    if (std::abs(coef) <= 1e-12) {
      if (rhs < -slack) empty = true;
    } else if (coef > 0.0) {
      hi = std::min(hi, rhs / coef);
    } else {
      lo = std::max(lo, rhs / coef);
    }
  };
  for (auto it = cones.begin(); it != cones.end(); ++it) {
    if (it == ray_it) continue;
    if (const auto *a = std::get_if<Angle>(&it->shape)) {
      for (const auto &h : angle_halfplanes(*it, *a)) {
        const Vec2 u = h.normal / length(h.normal);
        bound(dot(u, d), h.offset / length(h.normal) - dot(u, v));
      }
      continue;
    }
    const Point2 w = it->apex;
    const Vec2 e = std::get<Ray>(it->shape).dir / length(std::get<Ray>(it->shape).dir);
    const double den = cross(d, e);
    if (std::abs(den) <= 1e-12) {
      if (std::abs(cross(d, w - v)) > len_tol) {
        empty = true;
        continue;
      }
      // Collinear: (v + t d - w) . e >= 0
      bound(-dot(d, e), dot(v - w, e));
      continue;
    }
    const double t = cross(w - v, e) / den;
    const double s = cross(w - v, d) / den;
    if (s < -len_tol) {
      empty = true;
      continue;
    }
    lo = std::max(lo, t);
    hi = std::min(hi, t);
  }
  if (empty || lo > hi + slack) throw Error(ErrorCode::EmptyIntersection, "cones do not meet");
  if (std::isinf(hi)) throw Error(ErrorCode::Unbounded, "cone intersection is unbounded");
  if (hi - lo <= len_tol) return Region::point(v + (0.5 * (lo + hi)) * d);
  return Region::segment(v + lo * d, v + hi * d);
}

/// For 2k+1 collinear points the optimum is the middle one.
inline std::optional<Point2> collinear_median(std::span<const Point2> points, Tol tol = {}) {
  if (points.empty() || points.size() % 2 == 0) return std::nullopt;
  const Point2 a = points.front();
  Point2 far = a;
  for (const auto &p : points) {
    if (distance(a, p) > distance(a, far)) far = p;
  }
  if (far == a) return a;
  for (const auto &p : points) {
    if (orient(a, far, p, tol) != 0) return std::nullopt;
  }
  std::vector<Point2> sorted(points.begin(), points.end());
  const Vec2 axis = far - a;
  std::sort(sorted.begin(), sorted.end(),
            [&](Point2 p, Point2 q) { return dot(p - a, axis) < dot(q - a, axis); });
  return sorted[sorted.size() / 2];
}

/// Steps after an optimal non-terminal p is known: select functionals, build
/// one cone per terminal and intersect them.
inline FTSolution locus_from_point(const PolygonalNorm &norm, std::span<const Point2> points,
                                   Point2 p, const SelectionOptions &opts = {}) {
  FTSolution sol;
  sol.certificate = {p, select_functionals(norm, points, p, opts)};
  for (std::size_t i = 0; i < points.size(); ++i) {
    sol.cones.push_back(build_cone(norm, points[i], sol.certificate.functionals[i]));
  }
  sol.region = intersect_cones(sol.cones, norm.tol());
  sol.objective = objective(norm, points, p);
  return sol;
}

/// Full solution set of the Fermat-Torricelli problem for `points`.
inline FTSolution ft_solve(const PolygonalNorm &norm, std::span<const Point2> points,
                           const SolveOptions &opts = {}) {
  if (points.empty()) throw Error(ErrorCode::EmptyInput, "no terminals");
  for (const auto &p : points) {
    if (!is_finite(p)) throw Error(ErrorCode::NonFinite, "terminal is not finite");
  }
  const double scale = detail::scale_of(points);

  auto at_terminal = [&](Point2 q) {
    FTSolution sol;
    auto cert = verify_ft_point(norm, points, q);
    if (!cert) {
      throw Error(ErrorCode::CertificateFailure, "optimal terminal has no relaxed certificate");
    }
    sol.region = Region::point(q);
    sol.objective = objective(norm, points, q);
    sol.certificate = std::move(*cert);
    return sol;
  };

  if (opts.collinear_shortcut) {
    if (auto mid = collinear_median(points, norm.tol())) return at_terminal(*mid);
  }

  const auto cand = candidate_minimize(norm, points);
  const double near = 1e-6 * scale;
  auto off_terminals = [&](Point2 q) {
    return std::all_of(points.begin(), points.end(),
                       [&](Point2 x) { return distance(x, q) > near; });
  };

  std::vector<Point2> choices;
  Point2 centroid;
  for (const auto &c : cand.argmin) centroid += c;
  choices.push_back(centroid / static_cast<double>(cand.argmin.size()));
  for (const auto &c : cand.argmin) choices.push_back(c);
  for (std::size_t i = 0; i < cand.argmin.size(); ++i) {
    for (std::size_t j = i + 1; j < cand.argmin.size(); ++j) {
      choices.push_back(0.5 * (cand.argmin[i] + cand.argmin[j]));
    }
  }
  const auto pick = std::find_if(choices.begin(), choices.end(), off_terminals);
  if (pick == choices.end()) {
    if (cand.argmin.size() != 1) {
      throw Error(ErrorCode::CertificateFailure, "no optimal point off the terminals");
    }
    // Snap to the exact terminal coordinates.
    Point2 q = cand.argmin.front();
    for (const auto &x : points) {
      if (distance(x, q) <= near) q = x;
    }
    return at_terminal(q);
  }

  FTSolution sol = locus_from_point(norm, points, *pick);
  const double vt = detail::value_tol(norm, cand.value);
  for (const auto &v : sol.region.vertices) {
    if (std::abs(objective(norm, points, v) - cand.value) > 16.0 * vt) {
      throw Error(ErrorCode::CertificateFailure, "cone intersection vertex is not optimal");
    }
  }
  for (const auto &c : cand.argmin) {
    if (distance_to_region(sol.region, c) > 1e-6 * scale) {
      throw Error(ErrorCode::CertificateFailure, "cone intersection misses an optimal candidate");
    }
  }
  sol.objective = cand.value;
  return sol;
}

}  // namespace ftplane
