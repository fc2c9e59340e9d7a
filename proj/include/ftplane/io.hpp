#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "ftplane/error.hpp"
#include "ftplane/geometry.hpp"
#include "ftplane/lambda.hpp"
#include "ftplane/norm.hpp"
#include "ftplane/solver.hpp"
#include "ftplane/uniqueness.hpp"

// JSON documents exchanged by the command-line tool:
//   norm      {"type":"polygon","vertices":[[x,y],...]} | {"type":"lambda","lambda":k}
//   points    {"points":[[x,y],...]}
//   solution  {"kind":...,"vertices":[...],"objective":v,"certificate":{"p":[x,y],"functionals":[[a,b],...]}}
//   verdict   {"verdict":"unique"|"nonunique","condition":k,"witness":[...],"region_kind":...}
namespace ftplane::io {

using json = nlohmann::json;

// Rounds to 12 significant digits so documents are stable across platforms.
inline double round12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr) + 0.0;  // also folds -0 into 0
}

inline json to_json(Vec2 v) { return json::array({round12(v.x), round12(v.y)}); }

inline json to_json(std::span<const Point2> pts) {
  json a = json::array();
  for (const auto &p : pts) a.push_back(to_json(p));
  return a;
}

inline Vec2 parse_vec(const json &j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(ErrorCode::InvalidDocument, "expected a [x, y] pair");
  }
  const Vec2 v{j[0].get<double>(), j[1].get<double>()};
  if (!is_finite(v)) throw Error(ErrorCode::NonFinite, "coordinate is not finite");
  return v;
}

inline std::vector<Point2> parse_vec_list(const json &j, const char *what) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidDocument, std::string(what) + " must be an array");
  std::vector<Point2> out;
  for (const auto &e : j) out.push_back(parse_vec(e));
  return out;
}

inline json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidDocument, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error &e) {
    throw Error(ErrorCode::InvalidDocument, path + ": " + e.what());
  }
}

inline PolygonalNorm parse_norm(const json &doc, Tol tol = {}) {
  if (!doc.is_object() || !doc.contains("type")) {
    throw Error(ErrorCode::InvalidDocument, "norm document needs a \"type\"");
  }
  const auto type = doc.at("type").get<std::string>();
  if (type == "polygon") {
    if (!doc.contains("vertices")) throw Error(ErrorCode::InvalidDocument, "polygon norm needs \"vertices\"");
    return PolygonalNorm::make(parse_vec_list(doc.at("vertices"), "vertices"), tol);
  }
  if (type == "lambda") {
    if (!doc.contains("lambda") || !doc.at("lambda").is_number_integer()) {
      throw Error(ErrorCode::InvalidDocument, "lambda norm needs an integer \"lambda\"");
    }
    return make_lambda_norm(doc.at("lambda").get<int>(), tol).norm;
  }
  throw Error(ErrorCode::InvalidDocument, "unknown norm type \"" + type + "\"");
}

inline json norm_document(const PolygonalNorm &norm) {
  return {{"type", "polygon"}, {"vertices", to_json(norm.vertices())}};
}

inline std::vector<Point2> parse_points(const json &doc) {
  if (!doc.is_object() || !doc.contains("points")) {
    throw Error(ErrorCode::InvalidDocument, "points document needs \"points\"");
  }
  auto pts = parse_vec_list(doc.at("points"), "points");
  if (pts.empty()) throw Error(ErrorCode::EmptyInput, "points document is empty");
  return pts;
}

inline json points_document(std::span<const Point2> pts) { return {{"points", to_json(pts)}}; }

inline json solution_document(const FTSolution &sol) {
  json fs = json::array();
  for (const auto &f : sol.certificate.functionals) fs.push_back(to_json(f.as_vec()));
  return {{"kind", std::string(to_string(sol.region.kind))},
          {"vertices", to_json(sol.region.vertices)},
          {"objective", round12(sol.objective)},
          {"certificate", {{"p", to_json(sol.certificate.p)}, {"functionals", fs}}}};
}

inline RegionKind parse_region_kind(const std::string &s) {
  for (auto k : {RegionKind::Point, RegionKind::Segment, RegionKind::Polygon, RegionKind::Empty}) {
    if (s == to_string(k)) return k;
  }
  throw Error(ErrorCode::InvalidDocument, "unknown region kind \"" + s + "\"");
}

// Cones are not part of the document and come back empty.
inline FTSolution parse_solution(const json &doc) {
  try {
    FTSolution sol;
    sol.region.kind = parse_region_kind(doc.at("kind").get<std::string>());
    sol.region.vertices = parse_vec_list(doc.at("vertices"), "vertices");
    sol.objective = doc.at("objective").get<double>();
    const auto &cert = doc.at("certificate");
    sol.certificate.p = parse_vec(cert.at("p"));
    for (const auto &f : parse_vec_list(cert.at("functionals"), "functionals")) {
      sol.certificate.functionals.push_back(Functional::from_vec(f));
    }
    return sol;
  } catch (const json::exception &e) {
    throw Error(ErrorCode::InvalidDocument, e.what());
  }
}

inline json verdict_document(const Verdict &v) {
  if (is_unique(v)) return {{"verdict", "unique"}};
  const auto &nu = std::get<NonUnique>(v);
  return {{"verdict", "nonunique"},
          {"condition", nu.triple.condition},
          {"witness", to_json(nu.witness)},
          {"region_kind", std::string(to_string(nu.solution.region.kind))}};
}

}  // namespace ftplane::io
