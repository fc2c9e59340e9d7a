#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ftplane/error.hpp"
#include "ftplane/io.hpp"
#include "ftplane/lambda.hpp"
#include "ftplane/oracle.hpp"
#include "ftplane/solver.hpp"
#include "ftplane/svg.hpp"
#include "ftplane/uniqueness.hpp"

namespace ftplane::cli {

enum class Verb { Solve, Uniqueness, Lambda, Witness, Render };

struct Command {
  Verb verb = Verb::Solve;
  std::string norm;    // file path or preset name
  std::string points;  // file path or preset name
  std::optional<double> tol;
  std::string svg;
  std::optional<int> lambda;
  std::optional<int> max;
  std::uint64_t seed = 1;
  bool json = false;
};

namespace detail {

inline bool file_exists(const std::string &path) { return std::ifstream(path).good(); }

inline PolygonalNorm load_norm(const Command &cmd, Tol tol, std::mt19937_64 &rng) {
  if (cmd.lambda && cmd.norm.empty()) return make_lambda_norm(*cmd.lambda, tol).norm;
  const auto &n = cmd.norm;
  if (file_exists(n)) return io::parse_norm(io::read_json_file(n), tol);
  if (n == "diamond") return make_lambda_norm(2, tol).norm;
  if (n == "hexagon") return make_lambda_norm(3, tol).norm;
  if (n == "octagon") return make_lambda_norm(4, tol).norm;
  if (n == "square") {
    const std::vector<Point2> v{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
    return PolygonalNorm::make(v, tol);
  }
  if (n.rfind("lambda:", 0) == 0) return make_lambda_norm(std::stoi(n.substr(7)), tol).norm;
  if (n == "random") {
    auto norm = oracle::random_symmetric_norm(rng);
    return PolygonalNorm::make(norm.vertices(), tol);
  }
  throw Error(ErrorCode::InvalidDocument, "no norm file or preset named \"" + n + "\"");
}

inline std::vector<Point2> load_points(const Command &cmd, std::mt19937_64 &rng) {
  const auto &p = cmd.points;
  if (file_exists(p)) return io::parse_points(io::read_json_file(p));
  if (p == "triangle") return {{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}};
  if (p == "random") return oracle::random_points(rng, 3);
  if (p.rfind("random:", 0) == 0) {
    const int n = std::stoi(p.substr(7));
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "random point count must be positive");
    return oracle::random_points(rng, static_cast<std::size_t>(n));
  }
  throw Error(ErrorCode::InvalidDocument, "no points file or preset named \"" + p + "\"");
}

inline void write_file(const std::string &path, const std::string &text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << text;
}

inline void require(bool ok, const char *msg) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, msg);
}

inline std::string condition_label(const Verdict &v) {
  return is_unique(v) ? "-" : std::to_string(std::get<NonUnique>(v).triple.condition);
}

}  // namespace detail

/// Executes one command. Returns the process exit status: 0 on success, 1 on
/// invalid input, 2 when solver and certificate checks disagree.
inline int run(const Command &cmd, std::ostream &out, std::ostream &err) {
  try {
    const Tol tol = cmd.tol ? Tol(*cmd.tol) : Tol{};
    std::mt19937_64 rng(cmd.seed);
    const bool has_norm = !cmd.norm.empty() || cmd.lambda.has_value();

    switch (cmd.verb) {
      case Verb::Solve: {
        detail::require(has_norm, "solve needs --norm or --lambda");
        detail::require(!cmd.points.empty(), "solve needs --points");
        const auto norm = detail::load_norm(cmd, tol, rng);
        const auto pts = detail::load_points(cmd, rng);
        const auto sol = ft_solve(norm, pts);
        out << io::solution_document(sol).dump(2) << "\n";
        if (!cmd.svg.empty()) detail::write_file(cmd.svg, svg::render_svg(norm, pts, sol));
        return 0;
      }
      case Verb::Uniqueness: {
        detail::require(has_norm, "uniqueness needs --norm or --lambda");
        const auto norm = detail::load_norm(cmd, tol, rng);
        out << io::verdict_document(uniqueness_verdict(norm)).dump(2) << "\n";
        return 0;
      }
      case Verb::Lambda: {
        detail::require(cmd.max.has_value() || cmd.lambda.has_value(), "lambda needs --max or --lambda");
        const int first = cmd.lambda.value_or(2);
        const int last = cmd.max.value_or(first);
        detail::require(first <= last, "--lambda must not exceed --max");
        nlohmann::json rows = nlohmann::json::array();
        std::ostringstream table;
        table << "lambda  verdict    condition  witness\n";
        for (int k = first; k <= last; ++k) {
          const auto v = classify_lambda(k, tol);
          auto doc = io::verdict_document(v);
          doc["lambda"] = k;
          rows.push_back(doc);
          char head[64];
          std::snprintf(head, sizeof head, "%-7d %-10s %-10s ", k, is_unique(v) ? "unique" : "nonunique",
                        detail::condition_label(v).c_str());
          table << head << (is_unique(v) ? std::string("-") : doc["witness"].dump()) << "\n";
        }
        out << (cmd.json ? rows.dump(2) + "\n" : table.str());
        return 0;
      }
      case Verb::Witness: {
        detail::require(has_norm, "witness needs --norm or --lambda");
        const auto norm = detail::load_norm(cmd, tol, rng);
        const auto v = uniqueness_verdict(norm);
        auto doc = io::verdict_document(v);
        if (!is_unique(v)) {
          const auto &nu = std::get<NonUnique>(v);
          doc["solution"] = io::solution_document(nu.solution);
          if (!cmd.svg.empty()) {
            detail::write_file(cmd.svg, svg::render_svg(norm, nu.witness, nu.solution));
          }
        }
        out << doc.dump(2) << "\n";
        return 0;
      }
      case Verb::Render: {
        detail::require(has_norm, "render needs --norm or --lambda");
        detail::require(!cmd.svg.empty(), "render needs --svg");
        const auto norm = detail::load_norm(cmd, tol, rng);
        if (cmd.points.empty()) {
          detail::write_file(cmd.svg, svg::render_svg(norm, {}, nullptr, {}));
        } else {
          const auto pts = detail::load_points(cmd, rng);
          detail::write_file(cmd.svg, svg::render_svg(norm, pts, ft_solve(norm, pts)));
        }
        out << "wrote " << cmd.svg << "\n";
        return 0;
      }
    }
    return 1;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return is_internal(e.code()) ? 2 : 1;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace ftplane::cli
