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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "saddle/certify.hpp"
#include "saddle/convex_body.hpp"
#include "saddle/payoff.hpp"

namespace saddle {

/// A ready-to-solve game: two bodies in reduced (full-dimensional)
/// coordinates, the payoff over them, and the maps back to the original
/// coordinates the problem was stated in.
struct Instance {
  std::string kind;
  ConvexBody x_body;
  ConvexBody y_body;
  PayoffFunction payoff;
  AffineMap embed_x;
  AffineMap embed_y;
  /// Vertex lists in original coordinates, present at desk scale.
  std::optional<std::vector<Vector>> x_vertices;
  std::optional<std::vector<Vector>> y_vertices;
  /// Exact gap oracle when the instance structure allows one.
  std::optional<Certifier> certifier;
};

/// Overrides for one side's ball sandwich.
struct SandwichOverride {
  std::optional<Vector> inner_center;
  std::optional<double> inner_radius;
  std::optional<double> outer_radius;

  bool operator==(const SandwichOverride&) const = default;
};

/// Zero-sum matrix game on two probability simplices. Each simplex keeps
/// all but its last coordinate.
Instance build_matrix_game(const Matrix& a);

/// Bilinear game xᵀAy over two H-polytopes. Sandwiches come from the
/// overrides or, when the vertices can be enumerated, from the vertex
/// centroid (inner) and the largest vertex norm (outer).
Instance build_polytope_bilinear(const Matrix& a,
                                 const std::vector<Halfspace>& x_halfspaces,
                                 const std::vector<Halfspace>& y_halfspaces,
                                 const std::optional<SandwichOverride>& x_sandwich = {},
                                 const std::optional<SandwichOverride>& y_sandwich = {},
                                 bool allow_exact = true);

struct MatchingEdge {
  int agent = 0;
  int post = 0;
  int rank = 0;

  bool operator==(const MatchingEdge&) const = default;
};

/// Bipartite agents/posts graph with ranked edges (lower rank = preferred).
struct MatchingInstance {
  std::vector<std::string> agents;
  std::vector<std::string> posts;
  std::vector<MatchingEdge> edges;

  bool operator==(const MatchingInstance&) const = default;
};

/// Edge-indexed matrix with a_(u,v),(u,v') = +1/|U| when u ranks v above
/// v', -1/|U| when below, 0 otherwise (also 0 across different agents).
Matrix popular_matching_matrix(const MatchingInstance& inst);

/// All U-matchings: injective agent → post assignments along edges. Each
/// matching lists one edge index per agent.
std::vector<std::vector<int>> enumerate_u_matchings(const MatchingInstance& inst);

/// 0/1 edge indicator of a matching.
Vector matching_indicator(const MatchingInstance& inst,
                          const std::vector<int>& matching);

inline constexpr int kDeskScaleAgents = 6;
inline constexpr int kDeskScaleEdgesPerAgent = 8;

/// Mixed popular matchings. The U-matching polytope
///   {x ≥ 0 : Σ_v x_uv = 1 ∀u, Σ_u x_uv ≤ 1 ∀v}
/// becomes full-dimensional by solving each agent equality for the agent's
/// last listed edge. Throws GeometryError when there is no U-matching or
/// the reduced polytope still has no interior.
Instance build_popular_matching(const MatchingInstance& inst,
                                const std::optional<SandwichOverride>& x_sandwich = {},
                                const std::optional<SandwichOverride>& y_sandwich = {});

/// Set function on subsets of [n], stored as a table indexed by bitmask.
struct SubmodularCoverInstance {
  int ground_set_size = 0;
  std::vector<std::vector<int>> sets;
  /// "coverage" (f = covered fraction of the ground set) or "table".
  std::string f_kind = "coverage";
  std::vector<double> f_table;
  int n_limit = 16;

  bool operator==(const SubmodularCoverInstance&) const = default;
};

/// f(S) = |∪_{i∈S} S_i| / |E| for every subset S of the sets.
std::vector<double> coverage_table(int ground_set_size,
                                   const std::vector<std::vector<int>>& sets);

/// Exhaustive for n ≤ 12, 10⁴ random (S, i, j) triples otherwise. Throws
/// Error naming the first violated property.
void validate_submodular(const std::vector<double>& f_table, int n,
                         std::uint64_t seed = 1);

/// min_{x∈P} max_{y∈P_f} xᵀy with P the covering polytope and P_f the
/// polymatroid of f.
Instance build_submodular_cover(const SubmodularCoverInstance& inst,
                                const std::optional<SandwichOverride>& x_sandwich = {},
                                const std::optional<SandwichOverride>& y_sandwich = {});

/// Polymatroid membership by brute force over all 2ⁿ subsets.
bool polymatroid_contains(const std::vector<double>& f_table, int n,
                          const VectorRef& y);

/// Vertices of a bounded H-polytope by solving every dimension-sized subset
/// of constraints. Returns nullopt when the number of subsets exceeds
/// `max_subsets`.
std::optional<std::vector<Vector>> enumerate_vertices(const HalfspaceSet& set,
                                                      std::int64_t max_subsets = 200000);

/// Vertices of the polymatroid of f via the greedy rule over every
/// permutation (n ≤ 8).
std::vector<Vector> polymatroid_vertices(const std::vector<double>& f_table, int n);

}  // namespace saddle
