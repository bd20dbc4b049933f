// Copyright 2026 The saddle Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "saddle/instances.hpp"

namespace saddle {
namespace {

MatchingInstance make_matching(int agents, int posts, std::vector<MatchingEdge> edges) {
  MatchingInstance m;
  for (int u = 0; u < agents; ++u) m.agents.push_back("u" + std::to_string(u));
  for (int v = 0; v < posts; ++v) m.posts.push_back("v" + std::to_string(v));
  m.edges = std::move(edges);
  return m;
}

std::vector<oracle::Edge> oracle_edges(const MatchingInstance& m) {
  std::vector<oracle::Edge> out;
  for (const MatchingEdge& e : m.edges) out.push_back({e.agent, e.post, e.rank});
  return out;
}

// Random graph where every agent has between 2 and 3 edges.
MatchingInstance random_matching(std::mt19937_64& gen, int agents, int posts) {
  std::vector<MatchingEdge> edges;
  for (int u = 0; u < agents; ++u) {
    std::vector<int> vs(posts);
    std::iota(vs.begin(), vs.end(), 0);
    std::shuffle(vs.begin(), vs.end(), gen);
    const int deg = 2 + static_cast<int>(gen() % 2);
    for (int k = 0; k < deg && k < posts; ++k) {
      edges.push_back({u, vs[k], 1 + static_cast<int>(gen() % 3)});
    }
  }
  return make_matching(agents, posts, edges);
}

void expect_sandwich(const ConvexBody& body, std::mt19937_64& gen,
                     const std::optional<std::vector<Vector>>& verts, const AffineMap& embed) {
  std::normal_distribution<double> nd;
  const int d = body.dimension();
  EXPECT_LE(body.inner_center().norm() + body.inner_radius(),
            body.outer_radius() * (1 + 1e-12));
  for (int t = 0; t < 200 && d > 0; ++t) {
    Vector dir(d);
    for (int i = 0; i < d; ++i) dir(i) = nd(gen);
    dir.normalize();
    EXPECT_TRUE(body.contains(body.inner_center() + body.inner_radius() * (1 - 1e-9) * dir));
  }
  if (!verts) return;
  // Vertices map back to body coordinates inside the outer ball.
  for (const Vector& v : *verts) {
    const Vector z = embed.linear.colPivHouseholderQr().solve(v - embed.offset);
    EXPECT_LE(z.norm(), body.outer_radius() * (1 + 1e-9));
    EXPECT_TRUE((embed.apply(z) - v).norm() < 1e-9);
  }
}

TEST(MatrixGame, EmbedsBothSimplices) {
  Matrix a(2, 3);
  a << 1, 2, 3, 4, 5, 6;
  const Instance inst = build_matrix_game(a);
  EXPECT_EQ(inst.x_body.dimension(), 1);
  EXPECT_EQ(inst.y_body.dimension(), 2);
  EXPECT_EQ(inst.x_vertices->size(), 2u);
  EXPECT_EQ(inst.y_vertices->size(), 3u);
  EXPECT_DOUBLE_EQ(inst.payoff.width_bound(), std::sqrt(6.0) * 6.0);
  Vector x(1), y(2);
  x << 0.25;
  y << 0.5, 0.2;
  const Vector p = inst.embed_x.apply(x), q = inst.embed_y.apply(y);
  EXPECT_NEAR(inst.payoff.evaluate(x, y), p.dot(a * q), 1e-12);
  EXPECT_NEAR(inst.certifier->gap(x, y), gap_matrix_game(a, p, q), 1e-15);
}

TEST(Matching, SingleAgentMatrixFromTheEntryFormula) {
  const MatchingInstance m = make_matching(1, 2, {{0, 0, 1}, {0, 1, 2}});
  Matrix expected(2, 2);
  expected << 0, 1, -1, 0;
  EXPECT_EQ(popular_matching_matrix(m), expected);
  const Instance inst = build_popular_matching(m);
  EXPECT_EQ(inst.x_body.dimension(), 1);
  EXPECT_EQ(inst.x_vertices->size(), 2u);
  EXPECT_DOUBLE_EQ(inst.payoff.width_bound(), 1.0);
}

TEST(Matching, PayoffIdentityOnCompleteTwoByTwo) {
  const MatchingInstance m = make_matching(2, 2, {{0, 0, 1}, {0, 1, 2}, {1, 0, 1}, {1, 1, 2}});
  const auto ms = enumerate_u_matchings(m);
  ASSERT_EQ(ms.size(), 2u);
  const Matrix a = popular_matching_matrix(m);
  const auto edges = oracle_edges(m);
  for (const auto& s : ms) {
    for (const auto& t : ms) {
      const double direct = oracle::phi(edges, 2, s, t) - oracle::phi(edges, 2, t, s);
      EXPECT_NEAR(matching_indicator(m, s).dot(a * matching_indicator(m, t)), direct, 1e-15);
    }
  }
  // The two perfect matchings span a segment: no interior after elimination.
  EXPECT_THROW(build_popular_matching(m), GeometryError);
}

TEST(Matching, PayoffIdentityOnRandomGraphs) {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 30; ++trial) {
    const int agents = 1 + trial % 4;
    const MatchingInstance m = random_matching(gen, agents, agents + 2);
    const auto ms = enumerate_u_matchings(m);
    const auto oms = oracle::all_matchings(oracle_edges(m), agents, agents + 2);
    ASSERT_EQ(ms.size(), oms.size());
    const Matrix a = popular_matching_matrix(m);
    const auto edges = oracle_edges(m);
    for (const auto& s : ms) {
      for (const auto& t : ms) {
        const double direct = oracle::phi(edges, agents, s, t) - oracle::phi(edges, agents, t, s);
        ASSERT_NEAR(matching_indicator(m, s).dot(a * matching_indicator(m, t)), direct, 1e-14);
      }
    }
  }
}

TEST(Matching, WidthBoundHoldsOnEveryVertexPair) {
  std::mt19937_64 gen(6);
  int built = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const int agents = 1 + trial % 4;
    const MatchingInstance m = random_matching(gen, agents, agents + 2);
    std::optional<Instance> inst;
    try {
      inst = build_popular_matching(m);
    } catch (const GeometryError&) {
      continue;
    }
    ++built;
    const Matrix& a = inst->payoff.matrix();
    for (const Vector& s : *inst->x_vertices) {
      for (const Vector& t : *inst->y_vertices) {
        EXPECT_LE(std::abs(s.dot(a * t)), inst->payoff.width_bound() + 1e-12);
      }
    }
    expect_sandwich(inst->x_body, gen, inst->x_vertices, inst->embed_x);
  }
  EXPECT_GT(built, 10);
}

TEST(Matching, RejectsGraphsWithoutAUMatching) {
  const MatchingInstance m = make_matching(2, 2, {{0, 0, 1}, {1, 0, 1}});
  EXPECT_THROW(build_popular_matching(m), GeometryError);
  const MatchingInstance lonely = make_matching(2, 3, {{0, 0, 1}, {0, 1, 2}});
  EXPECT_THROW(build_popular_matching(lonely), GeometryError);
  const MatchingInstance crowded =
      make_matching(3, 3, {{0, 0, 1}, {0, 1, 2}, {1, 0, 1}, {1, 1, 1}, {2, 0, 1}, {2, 1, 3}});
  EXPECT_THROW(build_popular_matching(crowded), GeometryError);
}

TEST(Matching, EmbeddingSatisfiesAgentEqualities) {
  const MatchingInstance m =
      make_matching(2, 3, {{0, 0, 1}, {0, 1, 2}, {0, 2, 3}, {1, 0, 2}, {1, 2, 1}});
  const Instance inst = build_popular_matching(m);
  const Vector x = inst.embed_x.apply(inst.x_body.inner_center());
  EXPECT_NEAR(x(0) + x(1) + x(2), 1.0, 1e-15);
  EXPECT_NEAR(x(3) + x(4), 1.0, 1e-15);
  EXPECT_EQ(inst.x_vertices->size(), enumerate_u_matchings(m).size());
}

// ---------------------------------------------------------------------------

SubmodularCoverInstance two_full_sets() {
  SubmodularCoverInstance c;
  c.ground_set_size = 3;
  c.sets = {{0, 1, 2}, {0, 1, 2}};
  return c;
}

TEST(Cover, SingleSetHasNoInterior) {
  SubmodularCoverInstance c;
  c.ground_set_size = 2;
  c.sets = {{0, 1}};
  EXPECT_THROW(build_submodular_cover(c), GeometryError);
}

TEST(Cover, UncoveredElementIsRejected) {
  SubmodularCoverInstance c;
  c.ground_set_size = 3;
  c.sets = {{0, 1}, {0, 1}};
  EXPECT_THROW(build_submodular_cover(c), GeometryError);
}

TEST(Cover, MembershipOnTwoFullSets) {
  const Instance inst = build_submodular_cover(two_full_sets());
  Vector x(2);
  x << 0.9, 0.9;
  EXPECT_TRUE(inst.x_body.contains(x));
  const std::vector<double> f = coverage_table(3, two_full_sets().sets);
  Vector y(2);
  y << f[1], 0.0;
  EXPECT_TRUE(inst.y_body.contains(y));
  y(0) += 0.01;
  EXPECT_FALSE(inst.y_body.contains(y));
}

TEST(Cover, PolymatroidIsDownClosed) {
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> u(0, 1);
  SubmodularCoverInstance c;
  c.ground_set_size = 5;
  c.sets = {{0, 1}, {1, 2, 3}, {3, 4}, {0, 4}, {2}};
  const std::vector<double> f = coverage_table(5, c.sets);
  for (int t = 0; t < 2000; ++t) {
    Vector y(5);
    for (int i = 0; i < 5; ++i) y(i) = 0.5 * u(gen);
    const bool in = polymatroid_contains(f, 5, y);
    EXPECT_EQ(in, oracle::in_polymatroid(f, std::vector<double>(y.data(), y.data() + 5)));
    if (!in) continue;
    Vector lower = y;
    for (int i = 0; i < 5; ++i) lower(i) *= u(gen);
    EXPECT_TRUE(polymatroid_contains(f, 5, lower));
  }
}

TEST(Cover, PolymatroidVerticesAttainTheGreedySupport) {
  std::mt19937_64 gen(19);
  std::uniform_real_distribution<double> u(0, 1);
  const std::vector<std::vector<int>> sets = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  const std::vector<double> f = coverage_table(4, sets);
  const auto verts = polymatroid_vertices(f, 4);
  for (const Vector& v : verts) {
    EXPECT_TRUE(oracle::in_polymatroid(f, std::vector<double>(v.data(), v.data() + 4)));
  }
  for (int t = 0; t < 200; ++t) {
    std::vector<double> x(4);
    for (double& xi : x) xi = u(gen);
    double best = -1;
    for (const Vector& v : verts) best = std::max(best, Eigen::Map<Vector>(x.data(), 4).dot(v));
    EXPECT_NEAR(best, oracle::polymatroid_support(f, x), 1e-12);
  }
}

TEST(Cover, SubmodularityValidator) {
  std::vector<double> f = coverage_table(3, {{0}, {1}, {2}});
  EXPECT_NO_THROW(validate_submodular(f, 3));
  f[3] = 1.0;  // f({0,1}) above f({0}) + f({1})
  EXPECT_THROW(validate_submodular(f, 3), ConfigError);
  std::vector<double> g = coverage_table(3, {{0}, {1}, {2}});
  g[1] = 0.9;  // f({0}) > f({0,1})
  EXPECT_THROW(validate_submodular(g, 3), ConfigError);
}

TEST(Cover, SandwichAndCertifierOnSmallInstance) {
  std::mt19937_64 gen(23);
  SubmodularCoverInstance c;
  c.ground_set_size = 4;
  c.sets = {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}};
  const Instance inst = build_submodular_cover(c);
  expect_sandwich(inst.x_body, gen, inst.x_vertices, inst.embed_x);
  expect_sandwich(inst.y_body, gen, std::nullopt, inst.embed_y);
  for (const Vector& v : *inst.y_vertices) EXPECT_LE(v.norm(), inst.y_body.outer_radius() + 1e-12);
  ASSERT_TRUE(inst.certifier);
  EXPECT_GE(inst.certifier->gap(inst.x_body.inner_center(), inst.y_body.inner_center()), 0.0);
}

TEST(Vertices, UnitSquareAndTriangle) {
  const HalfspaceSet square(2, {{Vector::Unit(2, 0), 1.0},
                                {-Vector::Unit(2, 0), 0.0},
                                {Vector::Unit(2, 1), 1.0},
                                {-Vector::Unit(2, 1), 0.0}});
  EXPECT_EQ(enumerate_vertices(square)->size(), 4u);
  const HalfspaceSet tri(2, {{-Vector::Unit(2, 0), 0.0},
                             {-Vector::Unit(2, 1), 0.0},
                             {Vector::Ones(2), 1.0},
                             {Vector::Ones(2), 2.0}});
  EXPECT_EQ(enumerate_vertices(tri)->size(), 3u);
  EXPECT_FALSE(enumerate_vertices(square, 2).has_value());
}

TEST(PolytopeBilinear, NeedsASandwichWhenVerticesAreOutOfReach) {
  std::vector<Halfspace> cons;
  for (int k = 0; k < 12; ++k) {
    const double th = 2 * M_PI * k / 12;
    Vector a(2);
    a << std::cos(th), std::sin(th);
    cons.push_back({a, 1.0});
  }
  EXPECT_NO_THROW(build_polytope_bilinear(Matrix::Identity(2, 2), cons, cons));
  SandwichOverride s;
  s.inner_center = Vector::Zero(2);
  s.inner_radius = 1.5;
  EXPECT_THROW(build_polytope_bilinear(Matrix::Identity(2, 2), cons, cons, s), GeometryError);
}

}  // namespace
}  // namespace saddle
