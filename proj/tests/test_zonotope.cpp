#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace ftplane;
using zonotope::Segment;

namespace {

// Support function of the zonotope in direction u.
double support(std::span<const Segment> segs, Vec2 u) {
  double h = 0.0;
  for (const auto &s : segs) h += dot(u, s.base) + std::max(0.0, dot(u, s.dir));
  return h;
}

// Largest violation of a support inequality over many directions; positive
// means the target is certainly outside.
double separation(std::span<const Segment> segs, Vec2 target) {
  double worst = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < 3600; ++k) {
    const double a = k * 2 * std::numbers::pi / 3600;
    const Vec2 u{std::cos(a), std::sin(a)};
    worst = std::max(worst, dot(u, target) - support(segs, u));
  }
  // Facet normals are exact separators; include them too.
  for (const auto &s : segs) {
    if (length(s.dir) == 0.0) continue;
    for (const Vec2 u : {perp(s.dir), -perp(s.dir)}) {
      const Vec2 v = u / length(u);
      worst = std::max(worst, dot(v, target) - support(segs, v));
    }
  }
  return worst;
}

std::vector<Segment> random_segments(std::mt19937_64 &rng, std::size_t k) {
  std::uniform_real_distribution<double> c(-1, 1);
  std::bernoulli_distribution point(0.3);
  std::vector<Segment> segs(k);
  for (auto &s : segs) {
    s.base = {c(rng), c(rng)};
    if (!point(rng)) s.dir = {c(rng), c(rng)};
  }
  return segs;
}

}  // namespace

TEST(Zonotope, RepresentsEveryReachableTarget) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 500; ++trial) {
    const auto segs = random_segments(rng, 1 + trial % 8);
    std::vector<double> t(segs.size());
    for (auto &x : t) x = u(rng);
    const Vec2 target = zonotope::evaluate(segs, t);
    const auto got = zonotope::find_coefficients(segs, target, 1e-10);
    ASSERT_TRUE(got.has_value()) << "trial " << trial;
    for (double x : *got) {
      EXPECT_GE(x, 0.0);
      EXPECT_LE(x, 1.0);
    }
    EXPECT_LT(distance(zonotope::evaluate(segs, *got), target), 1e-10);
  }
}

TEST(Zonotope, VerticesAndEdgesAreReachable) {
  std::mt19937_64 rng(32);
  std::bernoulli_distribution bit(0.5);
  for (int trial = 0; trial < 300; ++trial) {
    const auto segs = random_segments(rng, 2 + trial % 6);
    std::vector<double> t(segs.size());
    for (auto &x : t) x = bit(rng) ? 1.0 : 0.0;
    const Vec2 target = zonotope::evaluate(segs, t);
    EXPECT_TRUE(zonotope::find_coefficients(segs, target, 1e-10).has_value());
  }
}

TEST(Zonotope, AgreesWithSupportOracle) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> c(-2, 2);
  int inside = 0, outside = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const auto segs = random_segments(rng, 1 + trial % 7);
    std::vector<double> t(segs.size());
    for (auto &x : t) x = 0.5 + 0.25 * c(rng);
    // Near the zonotope, on either side of its boundary.
    const Vec2 target = zonotope::evaluate(segs, t) + 0.4 * Vec2{c(rng), c(rng)};
    const double sep = separation(segs, target);
    if (std::abs(sep) < 1e-6) continue;  // too close to the boundary to judge by sampling
    const auto got = zonotope::find_coefficients(segs, target, 1e-10);
    if (sep > 0) {
      EXPECT_FALSE(got.has_value()) << "trial " << trial;
      ++outside;
    } else {
      ASSERT_TRUE(got.has_value()) << "trial " << trial;
      EXPECT_LT(distance(zonotope::evaluate(segs, *got), target), 1e-10);
      ++inside;
    }
  }
  EXPECT_GT(inside, 50);
  EXPECT_GT(outside, 50);
}

TEST(Zonotope, ParallelGenerators) {
  // All generators along x: the zonotope is a segment.
  const std::vector<Segment> segs{{{0, 0}, {1, 0}}, {{-3, 0}, {2, 0}}, {{1, 0}, {0.5, 0}}};
  EXPECT_TRUE(zonotope::find_coefficients(segs, {-1.0, 0}, 1e-12).has_value());
  EXPECT_TRUE(zonotope::find_coefficients(segs, {1.5, 0}, 1e-12).has_value());
  EXPECT_FALSE(zonotope::find_coefficients(segs, {1.6, 0}, 1e-12).has_value());
  EXPECT_FALSE(zonotope::find_coefficients(segs, {0, 0.1}, 1e-12).has_value());
}

TEST(Zonotope, ProjectionStaysInFiberAndNearCenter) {
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 300; ++trial) {
    const auto segs = random_segments(rng, 3 + trial % 5);
    std::vector<double> t(segs.size());
    for (auto &x : t) x = u(rng);
    const Vec2 target = zonotope::evaluate(segs, t);
    const std::vector<double> center(segs.size(), 0.5);
    const auto p = zonotope::project_within_fiber(segs, t, center);
    EXPECT_LT(distance(zonotope::evaluate(segs, p), target), 1e-9);
    double dp = 0, dt = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      EXPECT_GE(p[i], 0.0);
      EXPECT_LE(p[i], 1.0);
      if (length(segs[i].dir) == 0.0) continue;
      dp += (p[i] - 0.5) * (p[i] - 0.5);
      dt += (t[i] - 0.5) * (t[i] - 0.5);
    }
    EXPECT_LE(dp, dt * (1 + 1e-9) + 1e-12);
  }
}
