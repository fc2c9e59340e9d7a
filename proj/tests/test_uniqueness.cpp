#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace ftplane;
using namespace ftplane::testing;

namespace {

// Brute-force searches phrased on the primal side: a functional psi is
// zero-type at vertex k when psi(v_k) = 1 and psi(v_j) < 1 for every other
// vertex, i.e. its support line touches the polygon at v_k alone.
bool touches_only(const PolygonalNorm &n, Functional psi, std::size_t k, double tol) {
  if (std::abs(psi(n.vertex(k)) - 1.0) > tol) return false;
  for (std::size_t j = 0; j < n.size(); ++j) {
    if (j != k && psi(n.vertex(j)) >= 1.0 - tol) return false;
  }
  return true;
}

// Edge functional through the two endpoints, solved from scratch.
Functional edge_functional(const PolygonalNorm &n, std::size_t e) {
  const Point2 p = n.vertex(e), q = n.vertex(e + 1);
  const double det = p.x * q.y - p.y * q.x;
  return {(q.y - p.y) / det, (p.x - q.x) / det};
}

bool brute_condition1(const PolygonalNorm &n) {
  const std::size_t m = n.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k) {
        const auto s = edge_functional(n, i) + edge_functional(n, j) + edge_functional(n, k);
        if (length(s.as_vec()) < 1e-7) return true;
      }
  return false;
}

bool brute_condition2(const PolygonalNorm &n) {
  const std::size_t m = n.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const auto psi = -(edge_functional(n, i) + edge_functional(n, j));
      for (std::size_t k = 0; k < m; ++k) {
        if (touches_only(n, psi, k, 1e-7)) return true;
      }
    }
  return false;
}

// Scans psi1 over the dual edge of v_k on a fine grid and asks whether
// psi2 = -phi - psi1 touches the polygon at -v_k alone.
bool brute_condition3(const PolygonalNorm &n) {
  const std::size_t m = n.size();
  for (std::size_t e = 0; e < m; ++e) {
    const auto phi = edge_functional(n, e);
    for (std::size_t k = 0; k < m; ++k) {
      const auto lo = edge_functional(n, k + m - 1), hi = edge_functional(n, k);
      for (int s = 1; s < 2000; ++s) {
        const double t = s / 2000.0;
        const auto psi1 = (1 - t) * lo + t * hi;
        const auto psi2 = -(phi + psi1);
        if (touches_only(n, psi1, k, 1e-9) && touches_only(n, psi2, k + m / 2, 1e-9)) return true;
      }
    }
  }
  return false;
}

void expect_sound_triple(const PolygonalNorm &n, const ConsistentTriple &t) {
  Functional sum;
  for (const auto &f : t.functionals) sum += f;
  EXPECT_LT(length(sum.as_vec()), 1e-8);
  int first_type = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(dual_norm(n, t.functionals[i]), 1.0, 1e-9);
    if (const auto *e = std::get_if<EdgeElement>(&t.elements[i])) {
      ++first_type;
      EXPECT_LT(length((t.functionals[i] - edge_functional(n, e->edge)).as_vec()), 1e-9);
    } else {
      const auto k = std::get<VertexElement>(t.elements[i]).index;
      EXPECT_TRUE(touches_only(n, t.functionals[i], k, 1e-9));
    }
  }
  EXPECT_EQ(first_type, 4 - t.condition);
  if (t.condition == 3) {
    const auto a = std::get<VertexElement>(t.elements[1]).index;
    const auto b = std::get<VertexElement>(t.elements[2]).index;
    EXPECT_LT(distance(n.vertex(a), -n.vertex(b)), 1e-12);
  }
}

std::vector<Point2> rotated_list(std::span<const Point2> v, std::size_t by) {
  std::vector<Point2> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(v[(i + by) % v.size()]);
  return out;
}

// Random polygons plus linear images of the hexagon and of the skew hexagon,
// which carry conditions that random sampling essentially never produces.
std::vector<PolygonalNorm> condition_corpus() {
  std::vector<PolygonalNorm> out;
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> c(-1.5, 1.5);
  for (int i = 0; i < 40; ++i) out.push_back(oracle::random_symmetric_norm(rng, 4, 12));
  for (const auto &base : {hexagon(), skew_hexagon()}) {
    for (int i = 0; i < 15; ++i) {
      const Vec2 c1{c(rng), c(rng)}, c2{c(rng), c(rng)};
      if (std::abs(cross(c1, c2)) < 0.2) continue;
      out.push_back(PolygonalNorm::make(linear_image(base.vertices(), c1, c2)));
    }
  }
  for (int l = 2; l <= 12; ++l) out.push_back(make_lambda_norm(l).norm);
  return out;
}

}  // namespace

TEST(Condition1, Examples) {
  const auto t = check_condition1(hexagon());
  ASSERT_TRUE(t.has_value());
  expect_sound_triple(hexagon(), *t);
  for (const auto &f : t->functionals) EXPECT_NEAR(length(f.as_vec()), 2 / kSqrt3, 1e-12);
  EXPECT_FALSE(check_condition1(diamond()).has_value());
  EXPECT_FALSE(check_condition1(octagon()).has_value());
}

TEST(Condition2, Examples) {
  EXPECT_FALSE(check_condition2(octagon()).has_value());
  EXPECT_FALSE(check_condition2(diamond()).has_value());
  // lambda = 6 is non-unique through condition 1; condition 2 is recorded
  // against the brute-force search only.
  const auto n = make_lambda_norm(6).norm;
  EXPECT_EQ(check_condition2(n).has_value(), brute_condition2(n));
}

TEST(Condition3, Examples) {
  EXPECT_FALSE(check_condition3(diamond()).has_value());
  for (int l = 2; l <= 12; ++l) EXPECT_FALSE(check_condition3(make_lambda_norm(l).norm).has_value()) << l;
  const auto t = check_condition3(skew_hexagon());
  ASSERT_TRUE(t.has_value());
  expect_sound_triple(skew_hexagon(), *t);
  EXPECT_TRUE(brute_condition3(skew_hexagon()));
}

TEST(Conditions, AgreeWithBruteForce) {
  int hits[4] = {0, 0, 0, 0};
  for (const auto &n : condition_corpus()) {
    const auto c1 = check_condition1(n), c2 = check_condition2(n), c3 = check_condition3(n);
    EXPECT_EQ(c1.has_value(), brute_condition1(n));
    EXPECT_EQ(c2.has_value(), brute_condition2(n));
    EXPECT_EQ(c3.has_value(), brute_condition3(n));
    for (const auto *t : {&c1, &c2, &c3}) {
      if (t->has_value()) {
        expect_sound_triple(n, **t);
        ++hits[(*t)->condition];
      }
    }
  }
  // The corpus must actually exercise every condition.
  EXPECT_GT(hits[1], 0);
  EXPECT_GT(hits[2], 0);
  EXPECT_GT(hits[3], 0);
}

TEST(Verdict, Examples) {
  EXPECT_TRUE(is_unique(uniqueness_verdict(diamond())));
  EXPECT_TRUE(is_unique(uniqueness_verdict(octagon())));

  const auto v = uniqueness_verdict(hexagon());
  ASSERT_FALSE(is_unique(v));
  const auto &nu = std::get<NonUnique>(v);
  EXPECT_EQ(nu.triple.condition, 1);
  EXPECT_EQ(nu.expected, RegionKind::Polygon);
  EXPECT_EQ(nu.solution.region.kind, RegionKind::Polygon);
  // The witnesses are the midpoints of three alternating edges.
  for (const auto &w : nu.witness) EXPECT_NEAR(gauge(hexagon(), w), 1.0, 1e-12);
  for (const auto &e : nu.triple.elements) {
    ASSERT_TRUE(std::holds_alternative<EdgeElement>(e));
    EXPECT_NEAR(std::get<EdgeElement>(e).t, 0.5, 0);
  }
  const auto e0 = std::get<EdgeElement>(nu.triple.elements[0]).edge;
  const auto e1 = std::get<EdgeElement>(nu.triple.elements[1]).edge;
  const auto e2 = std::get<EdgeElement>(nu.triple.elements[2]).edge;
  EXPECT_EQ(e1 - e0, 2u);
  EXPECT_EQ(e2 - e1, 2u);
}

TEST(Verdict, WitnessesSolveToExpectedKinds) {
  for (const auto &n : condition_corpus()) {
    for (const auto &t : {check_condition1(n), check_condition2(n), check_condition3(n)}) {
      if (!t) continue;
      const auto nu = realize_triple(n, *t);
      EXPECT_NE(nu.solution.region.kind, RegionKind::Point);
      if (t->condition != 2) {
        EXPECT_EQ(nu.solution.region.kind, nu.expected) << "condition " << t->condition;
      }
    }
  }
}

TEST(Verdict, InvariantUnderVertexRotation) {
  for (const auto &n : condition_corpus()) {
    const bool base = is_unique(uniqueness_verdict(n));
    for (std::size_t by : {1u, 3u}) {
      const auto r = PolygonalNorm::make(rotated_list(n.vertices(), by));
      EXPECT_EQ(is_unique(uniqueness_verdict(r)), base);
    }
  }
}

TEST(Verdict, LambdaFamilyFollowsModThree) {
  for (int l = 2; l <= 30; ++l) {
    const auto v = uniqueness_verdict(make_lambda_norm(l).norm);
    EXPECT_EQ(is_unique(v), l % 3 != 0) << "lambda " << l;
  }
}
