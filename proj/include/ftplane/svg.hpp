#pragma once

#include <algorithm>
#include <cstdio>
#include <limits>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ftplane/geometry.hpp"
#include "ftplane/norm.hpp"
#include "ftplane/solver.hpp"

namespace ftplane::svg {

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// SVG's y axis points down.
inline std::string xy(Point2 p) { return num(p.x) + "," + num(-p.y); }

inline std::string path(std::span<const Point2> pts, bool closed) {
  std::string d;
  for (std::size_t i = 0; i < pts.size(); ++i) d += (i == 0 ? "M" : " L") + xy(pts[i]);
  if (closed) d += " Z";
  return d;
}

}  // namespace detail

/// Figure of the unit polygon (drawn around the origin), the terminals, the
/// cones and the solution region. Elements carry class names norm, terminal,
/// cone and region.
inline std::string render_svg(const PolygonalNorm &norm, std::span<const Point2> points,
                              const Region *region, std::span<const Cone> cones) {
  Point2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point2 hi = -lo;
  auto grow = [&](Point2 p) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  };
  for (const auto &v : norm.vertices()) grow(v);
  for (const auto &p : points) grow(p);
  if (region) {
    for (const auto &p : region->vertices) grow(p);
  }
  const double span = std::max(hi.x - lo.x, hi.y - lo.y);
  const double margin = 0.08 * span;
  const double ray_len = 0.35 * span;
  const double dot_r = 0.012 * span;
  const double stroke = 0.004 * span;

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + detail::num(lo.x - margin) + " " +
         detail::num(-hi.y - margin) + " " + detail::num(hi.x - lo.x + 2 * margin) + " " +
         detail::num(hi.y - lo.y + 2 * margin) + "\">\n";
  out += "<path class=\"norm\" d=\"" + detail::path(norm.vertices(), true) +
         "\" fill=\"none\" stroke=\"#555\" stroke-width=\"" + detail::num(stroke) + "\"/>\n";

  for (const auto &c : cones) {
    std::vector<Point2> pts;
    if (const auto *r = std::get_if<Ray>(&c.shape)) {
      pts = {c.apex, c.apex + (ray_len / length(r->dir)) * r->dir};
    } else {
      const auto &a = std::get<Angle>(c.shape);
      pts = {c.apex + (ray_len / length(a.first)) * a.first, c.apex,
             c.apex + (ray_len / length(a.second)) * a.second};
    }
    out += "<path class=\"cone\" d=\"" + detail::path(pts, false) +
           "\" fill=\"none\" stroke=\"#3a7\" stroke-dasharray=\"" + detail::num(3 * stroke) +
           "\" stroke-width=\"" + detail::num(stroke) + "\"/>\n";
  }

  if (region && region->kind != RegionKind::Empty) {
    if (region->kind == RegionKind::Point) {
      const Point2 p = region->vertices[0];
      out += "<circle class=\"region\" cx=\"" + detail::num(p.x) + "\" cy=\"" + detail::num(-p.y) +
             "\" r=\"" + detail::num(1.6 * dot_r) + "\" fill=\"#d33\"/>\n";
    } else {
      out += "<path class=\"region\" d=\"" +
             detail::path(region->vertices, region->kind == RegionKind::Polygon) +
             "\" fill=\"#d33\" fill-opacity=\"0.4\" stroke=\"#d33\" stroke-width=\"" +
             detail::num(2 * stroke) + "\"/>\n";
    }
  }

  for (const auto &p : points) {
    out += "<circle class=\"terminal\" cx=\"" + detail::num(p.x) + "\" cy=\"" + detail::num(-p.y) +
           "\" r=\"" + detail::num(dot_r) + "\" fill=\"#225\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

inline std::string render_svg(const PolygonalNorm &norm, std::span<const Point2> points,
                              const FTSolution &sol) {
  return render_svg(norm, points, &sol.region, sol.cones);
}

}  // namespace ftplane::svg
