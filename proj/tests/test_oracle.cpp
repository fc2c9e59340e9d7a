#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace ftplane;
using namespace ftplane::testing;

TEST(GridMinimize, Examples) {
  const std::vector<Point2> a{{0, 0}, {2, 0}, {0, 2}};
  auto g = oracle::grid_minimize(diamond(), a);
  EXPECT_NEAR(g.value, l1_sum(a, {0, 0}), 3 * g.cell_diameter);
  EXPECT_LT(distance(g.point, {0, 0}), 1e-3);

  const std::vector<Point2> one{{1.25, -3.5}};
  g = oracle::grid_minimize(hexagon(), one);
  EXPECT_LT(g.value, 2 * g.cell_diameter);
  EXPECT_LT(distance(g.point, one[0]), 2 * g.cell_diameter);

  g = oracle::grid_minimize(hexagon(), unit_triangle());
  EXPECT_NEAR(g.value, 2.0, 3 * g.cell_diameter);
}

TEST(GridMinimize, RejectsCoarseGrid) {
  const std::vector<Point2> a{{0, 0}};
  oracle::GridSpec spec;
  spec.resolution = 4;
  EXPECT_THROW(oracle::grid_minimize(diamond(), a, spec), Error);
}

TEST(GridMinimize, BracketsTheCertifiedOptimum) {
  std::mt19937_64 rng(71);
  oracle::GridSpec spec;
  spec.resolution = 120;
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = oracle::random_symmetric_norm(rng);
    const auto pts = oracle::random_points(rng, 3 + trial % 4);
    const auto s = ft_solve(n, pts);
    const auto g = oracle::grid_minimize(n, pts, spec);
    EXPECT_GE(g.value, s.objective - 1e-9);
    EXPECT_LE(g.value, s.objective + pts.size() * g.cell_diameter);
  }
}

TEST(SupportGauge, AgreesWithNormGauge) {
  std::mt19937_64 rng(72);
  std::uniform_real_distribution<double> c(-5, 5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto n = oracle::random_symmetric_norm(rng);
    const auto sup = oracle::support_functionals(n);
    for (int i = 0; i < 50; ++i) {
      const Vec2 v{c(rng), c(rng)};
      EXPECT_NEAR(oracle::gauge_by_support(sup, v), gauge(n, v), 1e-12 * (1 + length(v)));
    }
  }
}

TEST(Probe, CleanOnUnitTriangle) {
  const auto tri = unit_triangle();
  const auto s = ft_solve(hexagon(), tri);
  const auto rep = oracle::probe_solution_set(hexagon(), tri, s.region, 200);
  EXPECT_LT(rep.max_inside_deviation, 1e-9);
  EXPECT_GT(rep.min_outside_excess, 0.0);
  EXPECT_NEAR(rep.reference, 2.0, 1e-12);
}

TEST(Probe, PointRegionHasNoSpread) {
  const std::vector<Point2> a{{0, 0}, {2, 0}, {0, 2}};
  const auto s = ft_solve(diamond(), a);
  const auto rep = oracle::probe_solution_set(diamond(), a, s.region, 10);
  EXPECT_EQ(rep.inside_samples, 1u);
  EXPECT_EQ(rep.max_inside_deviation, 0.0);
  EXPECT_GT(rep.min_outside_excess, 0.0);
}

TEST(Probe, DetectsShiftedRegion) {
  const auto tri = unit_triangle();
  auto region = ft_solve(hexagon(), tri).region;
  for (auto &v : region.vertices) v += Vec2{0.1, 0};
  const auto rep = oracle::probe_solution_set(hexagon(), tri, region, 200);
  // Part of the shifted triangle is no longer optimal: the spread grows, and
  // some outside probes land back inside the true solution set.
  EXPECT_GT(rep.max_inside_deviation, 1e-3);
  EXPECT_LE(rep.min_outside_excess, 1e-12);
}

TEST(Probe, DetectsShrunkenRegion) {
  const auto tri = unit_triangle();
  auto region = ft_solve(hexagon(), tri).region;
  const Point2 c = region.centroid();
  for (auto &v : region.vertices) v = c + 0.9 * (v - c);
  const auto rep = oracle::probe_solution_set(hexagon(), tri, region, 50);
  EXPECT_LE(rep.min_outside_excess, 1e-12);
}

TEST(RandomNorm, ValidAndReproducible) {
  std::mt19937_64 a(5), b(5);
  for (int i = 0; i < 50; ++i) {
    const auto n = oracle::random_symmetric_norm(a);
    const auto m = oracle::random_symmetric_norm(b);
    EXPECT_GE(n.size(), 4u);
    EXPECT_LE(n.size(), 20u);
    EXPECT_EQ(n.size() % 2, 0u);
    ASSERT_EQ(n.size(), m.size());
    for (std::size_t k = 0; k < n.size(); ++k) EXPECT_EQ(n.vertex(k), m.vertex(k));
  }
}
