#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "ftplane/geometry.hpp"

// Planar zonotopes given as Minkowski sums of segments base_i + t_i * dir_i,
// t_i in [0, 1]. Used to pick one functional from each norming set so that
// the picks sum to a prescribed vector.
namespace ftplane::zonotope {

struct Segment {
  Vec2 base;
  Vec2 dir;
};

inline Vec2 evaluate(std::span<const Segment> segs, std::span<const double> t) {
  Vec2 s;
  for (std::size_t i = 0; i < segs.size(); ++i) s += segs[i].base + t[i] * segs[i].dir;
  return s;
}

namespace detail {

inline Vec2 rotate(Vec2 v, double c, double s) { return {c * v.x + s * v.y, -s * v.x + c * v.y}; }

// Pseudo-inverse of the symmetric PSD matrix [[p, q], [q, r]].
inline std::array<double, 3> pinv2(double p, double q, double r) {
  const double tr = p + r;
  const double disc = std::sqrt(std::max(0.0, 0.25 * (p - r) * (p - r) + q * q));
  const double l1 = 0.5 * tr + disc;
  const double l2 = 0.5 * tr - disc;
  const double cut = 1e-12 * std::max(1.0, std::abs(l1));
  if (l1 <= cut) return {0.0, 0.0, 0.0};
  // Unit eigenvector for l1.
  Vec2 e1 = std::abs(q) > 0.0 ? Vec2{l1 - r, q} : (p >= r ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0});
  e1 = e1 / length(e1);
  const Vec2 e2 = perp(e1);
  const double i1 = 1.0 / l1;
  const double i2 = l2 > cut ? 1.0 / l2 : 0.0;
  return {i1 * e1.x * e1.x + i2 * e2.x * e2.x, i1 * e1.x * e1.y + i2 * e2.x * e2.y,
          i1 * e1.y * e1.y + i2 * e2.y * e2.y};
}

}  // namespace detail

/// Finds t in [0,1]^k with sum(base_i + t_i dir_i) = target, or nullopt when
/// the target lies farther than tol from the zonotope.
///
/// Rank-2 case: rotate so every generator points strictly upward, walk the
/// two monotone boundary chains to the target's height, and mix the two
/// boundary representations. Representations form a convex set, so the mix
/// represents the target.
inline std::optional<std::vector<double>> find_coefficients(std::span<const Segment> segs,
                                                            Vec2 target, double tol) {
  const std::size_t k = segs.size();
  std::vector<double> t(k, 0.0);
  Vec2 r = target;
  for (const auto &s : segs) r -= s.base;

  double gen_scale = 0.0;
  for (const auto &s : segs) gen_scale = std::max(gen_scale, length(s.dir));
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < k; ++i) {
    if (length(segs[i].dir) > 1e-14 * std::max(1.0, gen_scale)) active.push_back(i);
  }
  auto accept = [&]() -> std::optional<std::vector<double>> {
    for (auto &x : t) x = std::clamp(x, 0.0, 1.0);
    if (length(evaluate(segs, t) - target) <= tol) return t;
    return std::nullopt;
  };
  if (active.empty()) return accept();

  // Angles mod pi of the active generators.
  std::vector<double> ang;
  for (auto i : active) {
    double a = std::atan2(segs[i].dir.y, segs[i].dir.x);
    if (a < 0.0) a += std::numbers::pi;
    if (a >= std::numbers::pi) a -= std::numbers::pi;
    ang.push_back(a);
  }
  std::vector<double> sorted = ang;
  std::sort(sorted.begin(), sorted.end());
  double best_gap = sorted.front() + std::numbers::pi - sorted.back();
  double theta0 = sorted.back() + 0.5 * best_gap;
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    const double gap = sorted[i + 1] - sorted[i];
    if (gap > best_gap) best_gap = gap, theta0 = sorted[i] + 0.5 * gap;
  }

  if (std::numbers::pi - best_gap <= 1e-12) {
    // All generators parallel: a segment. Move along the common axis using
    // generators of the needed sign only.
    const std::size_t i0 = active.front();
    const Vec2 u = segs[i0].dir / length(segs[i0].dir);
    double need = dot(r, u);
    const bool forward = need > 0.0;
    for (auto i : active) {
      const double l = dot(segs[i].dir, u);
      if ((l > 0.0) != forward || need == 0.0) continue;
      const double step = std::clamp(need / l, 0.0, 1.0);
      t[i] = step;
      need -= step * l;
    }
    return accept();
  }

  const double c = std::cos(theta0), s = std::sin(theta0);
  std::vector<Vec2> g(k);
  std::vector<bool> flipped(k, false);
  Vec2 rr = detail::rotate(r, c, s);
  for (auto i : active) {
    g[i] = detail::rotate(segs[i].dir, c, s);
    if (g[i].y < 0.0) {
      // base + t d == (base + d) + (1 - t)(-d)
      rr -= g[i];
      g[i] = -g[i];
      flipped[i] = true;
    }
  }
  std::vector<std::size_t> order = active;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::atan2(g[a].y, g[a].x) < std::atan2(g[b].y, g[b].x);
  });
  double top = 0.0;
  for (auto i : active) top += g[i].y;
  const double h = std::clamp(rr.y, 0.0, top);

  // Walk a chain from the bottom vertex, returning the boundary point at
  // height h and its coefficients.
  auto walk = [&](auto first, auto last, std::vector<double> &coef) {
    Vec2 pos;
    for (auto it = first; it != last; ++it) {
      const std::size_t i = *it;
      if (pos.y + g[i].y >= h || std::next(it) == last) {
        const double f = g[i].y > 0.0 ? std::clamp((h - pos.y) / g[i].y, 0.0, 1.0) : 0.0;
        coef[i] = f;
        return pos + f * g[i];
      }
      coef[i] = 1.0;
      pos += g[i];
    }
    return pos;
  };
  std::vector<double> right(k, 0.0), left(k, 0.0);
  const Vec2 a = walk(order.begin(), order.end(), right);
  const Vec2 b = walk(order.rbegin(), order.rend(), left);
  const double width = a.x - b.x;
  const double mix = width > 1e-15 * std::max(1.0, gen_scale)
                         ? std::clamp((rr.x - b.x) / width, 0.0, 1.0)
                         : 0.5;
  for (auto i : active) {
    const double tau = (1.0 - mix) * left[i] + mix * right[i];
    t[i] = flipped[i] ? 1.0 - tau : tau;
  }
  return accept();
}

/// Starting from a feasible t, returns the point of
/// {t in [0,1]^k : sum t_i dir_i = sum feasible_i dir_i} nearest to center
/// (primal active-set method on the box-constrained projection).
inline std::vector<double> project_within_fiber(std::span<const Segment> segs,
                                                std::vector<double> t,
                                                std::span<const double> center) {
  const std::size_t k = segs.size();
  enum class State { Free, Lower, Upper };
  std::vector<State> state(k, State::Free);
  for (std::size_t i = 0; i < k; ++i) {
    if (t[i] <= 0.0) t[i] = 0.0, state[i] = State::Lower;
    if (t[i] >= 1.0) t[i] = 1.0, state[i] = State::Upper;
  }

  std::vector<double> step(k, 0.0);
  for (int iter = 0; iter < 50 + 10 * static_cast<int>(k); ++iter) {
    // Normal matrix of the free columns and A_F g_F.
    double p = 0.0, q = 0.0, r = 0.0;
    Vec2 ag;
    for (std::size_t i = 0; i < k; ++i) {
      if (state[i] != State::Free) continue;
      const Vec2 d = segs[i].dir;
      p += d.x * d.x, q += d.x * d.y, r += d.y * d.y;
      ag += (t[i] - center[i]) * d;
    }
    const auto m = detail::pinv2(p, q, r);
    const Vec2 lambda{m[0] * ag.x + m[1] * ag.y, m[1] * ag.x + m[2] * ag.y};

    double biggest = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      step[i] = 0.0;
      if (state[i] != State::Free) continue;
      step[i] = -(t[i] - center[i]) + dot(segs[i].dir, lambda);
      biggest = std::max(biggest, std::abs(step[i]));
    }

    if (biggest <= 1e-13) {
      std::size_t worst = k;
      double worst_val = 1e-12;
      for (std::size_t i = 0; i < k; ++i) {
        if (state[i] == State::Free) continue;
        const double grad = t[i] - center[i] - dot(segs[i].dir, lambda);
        const double violation = state[i] == State::Lower ? -grad : grad;
        if (violation > worst_val) worst_val = violation, worst = i;
      }
      if (worst == k) break;
      state[worst] = State::Free;
      continue;
    }

    double alpha = 1.0;
    std::size_t block = k;
    for (std::size_t i = 0; i < k; ++i) {
      if (state[i] != State::Free || step[i] == 0.0) continue;
      const double lim = step[i] < 0.0 ? -t[i] / step[i] : (1.0 - t[i]) / step[i];
      if (lim < alpha) alpha = lim, block = i;
    }
    for (std::size_t i = 0; i < k; ++i) {
      if (state[i] == State::Free) t[i] = std::clamp(t[i] + alpha * step[i], 0.0, 1.0);
    }
    if (block != k) {
      t[block] = step[block] < 0.0 ? 0.0 : 1.0;
      state[block] = step[block] < 0.0 ? State::Lower : State::Upper;
    }
  }
  return t;
}

}  // namespace ftplane::zonotope
