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

#include "saddle/instances.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <utility>

#include <Eigen/LU>

namespace saddle {
namespace {

constexpr double kVertexTolerance = 1e-9;

Vector centroid(const std::vector<Vector>& pts, int dim) {
  Vector c = Vector::Zero(dim);
  for (const Vector& p : pts) c += p;
  if (!pts.empty()) c /= static_cast<double>(pts.size());
  return c;
}

double max_norm(const std::vector<Vector>& pts) {
  double r = 0.0;
  for (const Vector& p : pts) r = std::max(r, p.norm());
  return r;
}

// Builds a halfspace body, taking any overridden sandwich value in place of
// the computed one.
ConvexBody halfspace_body(const std::vector<Halfspace>& constraints, int dim,
                          Vector center, double r, double big_r,
                          const std::optional<SandwichOverride>& over,
                          const std::string& label) {
  if (over) {
    if (over->inner_center) {
      if (over->inner_center->size() != dim) {
        throw DimensionError(label + ": sandwich inner_center has wrong dimension");
      }
      center = *over->inner_center;
      if (!over->inner_radius) r = HalfspaceSet(dim, constraints).slack_radius(center);
    }
    if (over->inner_radius) r = *over->inner_radius;
    if (over->outer_radius) big_r = *over->outer_radius;
  }
  if (dim > 0 && !(r > 1e-12)) {
    throw GeometryError(label + ": body has no interior");
  }
  if (dim == 0) {
    r = std::max(r, 1.0);
    big_r = std::max(big_r, r);
  }
  return make_halfspace_body(constraints, std::move(center), r, big_r, label);
}

std::int64_t binomial_capped(int n, int k, std::int64_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long double acc = 1.0L;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (acc > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::int64_t>(std::llround(acc));
}

void add_unique(std::vector<Vector>& pts, const Vector& p) {
  for (const Vector& q : pts) {
    if ((q - p).lpNorm<Eigen::Infinity>() <= 1e-7) return;
  }
  pts.push_back(p);
}

}  // namespace

std::optional<std::vector<Vector>> enumerate_vertices(const HalfspaceSet& set,
                                                      std::int64_t max_subsets) {
  const int d = set.dimension();
  const auto& cons = set.constraints();
  const int m = static_cast<int>(cons.size());
  if (d == 0) return std::vector<Vector>{Vector(0)};
  if (binomial_capped(m, d, max_subsets) > max_subsets) return std::nullopt;

  std::vector<Vector> vertices;
  std::vector<int> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  Matrix lhs(d, d);
  Vector rhs(d);
  while (true) {
    for (int r = 0; r < d; ++r) {
      lhs.row(r) = cons[idx[r]].a.transpose();
      rhs(r) = cons[idx[r]].b;
    }
    Eigen::FullPivLU<Matrix> lu(lhs);
    if (lu.rank() == d) {
      const Vector p = lu.solve(rhs);
      bool feasible = true;
      for (const Halfspace& h : cons) {
        const double scale = std::max(1.0, std::abs(h.b));
        if (h.a.dot(p) > h.b + kVertexTolerance * scale) {
          feasible = false;
          break;
        }
      }
      if (feasible) add_unique(vertices, p);
    }
    int k = d - 1;
    while (k >= 0 && idx[k] == m - d + k) --k;
    if (k < 0) break;
    ++idx[k];
    for (int j = k + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
  return vertices;
}

Instance build_matrix_game(const Matrix& a) {
  if (a.rows() < 1 || a.cols() < 1) throw DimensionError("empty payoff matrix");
  if (!a.allFinite()) throw ConfigError("payoff matrix has non-finite entries");
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  AffineMap ex = simplex_embedding(m - 1);
  AffineMap ey = simplex_embedding(n - 1);
  std::vector<Vector> xv, yv;
  for (int i = 0; i < m; ++i) xv.push_back(Vector::Unit(m, i));
  for (int j = 0; j < n; ++j) yv.push_back(Vector::Unit(n, j));

  Certifier cert;
  cert.method = CertMethod::exact_vertex;
  cert.gap = [a, ex, ey](const VectorRef& x, const VectorRef& y) {
    return gap_matrix_game(a, ex.apply(x), ey.apply(y));
  };
  PayoffFunction f = PayoffFunction::bilinear(a, ex, ey, width_bound_bilinear(a, 1.0, 1.0));
  return Instance{"matrix_game",
                  make_simplex_body(m - 1, "X"),
                  make_simplex_body(n - 1, "Y"),
                  std::move(f),
                  std::move(ex),
                  std::move(ey),
                  std::move(xv),
                  std::move(yv),
                  std::move(cert)};
}

Instance build_polytope_bilinear(const Matrix& a,
                                 const std::vector<Halfspace>& x_halfspaces,
                                 const std::vector<Halfspace>& y_halfspaces,
                                 const std::optional<SandwichOverride>& x_sandwich,
                                 const std::optional<SandwichOverride>& y_sandwich,
                                 bool allow_exact) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  if (m < 1 || n < 1) throw DimensionError("empty payoff matrix");
  const HalfspaceSet xs(m, x_halfspaces);
  const HalfspaceSet ys(n, y_halfspaces);
  auto xv = enumerate_vertices(xs);
  auto yv = enumerate_vertices(ys);

  auto side = [](const HalfspaceSet& set, const std::optional<std::vector<Vector>>& verts,
                 const std::optional<SandwichOverride>& over, const std::string& label) {
    const int dim = set.dimension();
    const bool complete = over && over->inner_center && over->outer_radius;
    if (!complete && (!verts || verts->empty())) {
      if (verts && verts->empty()) throw GeometryError(label + ": polytope is empty or unbounded");
      throw ConfigError(label + ": too many constraints to enumerate vertices; "
                        "provide sandwich inner_center and outer_radius");
    }
    Vector c = verts && !verts->empty() ? centroid(*verts, dim) : *over->inner_center;
    const double big_r = verts && !verts->empty() ? max_norm(*verts) : *over->outer_radius;
    const double r = set.slack_radius(c);
    return halfspace_body(set.constraints(), dim, std::move(c), r, big_r, over, label);
  };
  ConvexBody xb = side(xs, xv, x_sandwich, "X");
  ConvexBody yb = side(ys, yv, y_sandwich, "Y");

  const double width = width_bound_bilinear(a, xb.outer_radius(), yb.outer_radius());
  PayoffFunction f = PayoffFunction::bilinear(a, width);
  std::optional<Certifier> cert;
  if (allow_exact && xv && yv && !xv->empty() && !yv->empty()) {
    cert = Certifier{CertMethod::exact_vertex,
                     [a, x = *xv, y = *yv](const VectorRef& p, const VectorRef& q) {
                       return gap_polytope_bilinear(a, x, y, p, q);
                     }};
  }
  return Instance{"polytope_bilinear", std::move(xb), std::move(yb), std::move(f),
                  AffineMap::identity(m), AffineMap::identity(n),
                  xv, yv, std::move(cert)};
}

// ---------------------------------------------------------------------------
// Popular matchings

namespace {

void validate_matching(const MatchingInstance& inst) {
  const int nu = static_cast<int>(inst.agents.size());
  const int nv = static_cast<int>(inst.posts.size());
  if (nu == 0) throw ConfigError("matching instance has no agents");
  std::set<std::pair<int, int>> seen;
  std::vector<int> degree(nu, 0);
  for (std::size_t e = 0; e < inst.edges.size(); ++e) {
    const MatchingEdge& edge = inst.edges[e];
    if (edge.agent < 0 || edge.agent >= nu || edge.post < 0 || edge.post >= nv) {
      throw ConfigError("edge " + std::to_string(e) + " references an unknown agent or post");
    }
    if (!seen.insert({edge.agent, edge.post}).second) {
      throw ConfigError("edge " + std::to_string(e) + " duplicates an agent/post pair");
    }
    ++degree[edge.agent];
  }
  for (int u = 0; u < nu; ++u) {
    if (degree[u] == 0) {
      throw GeometryError("agent '" + inst.agents[u] + "' has no edges; no U-matching exists");
    }
  }
}

void extend_matchings(const MatchingInstance& inst,
                      const std::vector<std::vector<int>>& by_agent, int u,
                      std::vector<int>& current, std::vector<char>& used,
                      std::vector<std::vector<int>>& out) {
  if (u == static_cast<int>(by_agent.size())) {
    out.push_back(current);
    return;
  }
  for (int e : by_agent[u]) {
    const int v = inst.edges[e].post;
    if (used[v]) continue;
    used[v] = 1;
    current.push_back(e);
    extend_matchings(inst, by_agent, u + 1, current, used, out);
    current.pop_back();
    used[v] = 0;
  }
}

std::vector<std::vector<int>> edges_by_agent(const MatchingInstance& inst) {
  std::vector<std::vector<int>> by_agent(inst.agents.size());
  for (std::size_t e = 0; e < inst.edges.size(); ++e) {
    by_agent[inst.edges[e].agent].push_back(static_cast<int>(e));
  }
  return by_agent;
}

// Randomized greedy-with-backtracking search for distinct U-matchings.
std::vector<std::vector<int>> random_matchings(const MatchingInstance& inst, int wanted,
                                               std::uint64_t seed) {
  const auto by_agent = edges_by_agent(inst);
  std::mt19937_64 gen(seed);
  std::set<std::vector<int>> found;
  const int attempts = 20 * wanted;
  for (int a = 0; a < attempts && static_cast<int>(found.size()) < wanted; ++a) {
    std::vector<std::vector<int>> order = by_agent;
    for (auto& list : order) std::shuffle(list.begin(), list.end(), gen);
    std::vector<int> current;
    std::vector<char> used(inst.posts.size(), 0);
    std::vector<std::vector<int>> out;
    // Depth-first with a cap of one solution per attempt.
    std::function<bool(int)> go = [&](int u) -> bool {
      if (u == static_cast<int>(order.size())) {
        out.push_back(current);
        return true;
      }
      for (int e : order[u]) {
        const int v = inst.edges[e].post;
        if (used[v]) continue;
        used[v] = 1;
        current.push_back(e);
        if (go(u + 1)) return true;
        current.pop_back();
        used[v] = 0;
      }
      return false;
    };
    if (!go(0)) return {};
    found.insert(out.front());
  }
  return {found.begin(), found.end()};
}

}  // namespace

Matrix popular_matching_matrix(const MatchingInstance& inst) {
  const int ne = static_cast<int>(inst.edges.size());
  const double w = 1.0 / static_cast<double>(inst.agents.size());
  Matrix a = Matrix::Zero(ne, ne);
  for (int e = 0; e < ne; ++e) {
    for (int f = 0; f < ne; ++f) {
      const MatchingEdge& p = inst.edges[e];
      const MatchingEdge& q = inst.edges[f];
      if (p.agent != q.agent) continue;
      if (p.rank < q.rank) a(e, f) = w;
      else if (p.rank > q.rank) a(e, f) = -w;
    }
  }
  return a;
}

std::vector<std::vector<int>> enumerate_u_matchings(const MatchingInstance& inst) {
  validate_matching(inst);
  const auto by_agent = edges_by_agent(inst);
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  std::vector<char> used(inst.posts.size(), 0);
  extend_matchings(inst, by_agent, 0, current, used, out);
  return out;
}

Vector matching_indicator(const MatchingInstance& inst, const std::vector<int>& matching) {
  Vector x = Vector::Zero(static_cast<Eigen::Index>(inst.edges.size()));
  for (int e : matching) x(e) = 1.0;
  return x;
}

Instance build_popular_matching(const MatchingInstance& inst,
                                const std::optional<SandwichOverride>& x_sandwich,
                                const std::optional<SandwichOverride>& y_sandwich) {
  validate_matching(inst);
  const int ne = static_cast<int>(inst.edges.size());
  const int nu = static_cast<int>(inst.agents.size());
  const int nv = static_cast<int>(inst.posts.size());
  const auto by_agent = edges_by_agent(inst);

  // The last listed edge of each agent is eliminated.
  std::vector<int> reduced_index(ne, -1);
  int k = 0;
  for (int u = 0; u < nu; ++u) {
    for (std::size_t i = 0; i + 1 < by_agent[u].size(); ++i) reduced_index[by_agent[u][i]] = k++;
  }
  AffineMap embed{Matrix::Zero(ne, k), Vector::Zero(ne)};
  for (int u = 0; u < nu; ++u) {
    const int last = by_agent[u].back();
    embed.offset(last) = 1.0;
    for (std::size_t i = 0; i + 1 < by_agent[u].size(); ++i) {
      const int e = by_agent[u][i];
      embed.linear(e, reduced_index[e]) = 1.0;
      embed.linear(last, reduced_index[e]) = -1.0;
    }
  }

  std::vector<Halfspace> cons;
  for (int u = 0; u < nu; ++u) {
    for (std::size_t i = 0; i + 1 < by_agent[u].size(); ++i) {
      cons.push_back({-Vector::Unit(k, reduced_index[by_agent[u][i]]), 0.0});
    }
    if (by_agent[u].size() > 1) {
      Vector a = Vector::Zero(k);
      for (std::size_t i = 0; i + 1 < by_agent[u].size(); ++i) a(reduced_index[by_agent[u][i]]) = 1.0;
      cons.push_back({a, 1.0});
    }
  }
  for (int v = 0; v < nv; ++v) {
    Vector a = Vector::Zero(k);
    double b = 1.0;
    bool touched = false;
    for (int e = 0; e < ne; ++e) {
      if (inst.edges[e].post != v) continue;
      touched = true;
      a += embed.linear.row(e).transpose();
      b -= embed.offset(e);
    }
    if (!touched) continue;
    if (a.lpNorm<Eigen::Infinity>() == 0.0) {
      if (b < 0.0) {
        throw GeometryError("post '" + inst.posts[v] + "' is forced to more than one agent; "
                            "no U-matching exists");
      }
      continue;
    }
    cons.push_back({a, b});
  }

  const bool desk = nu <= kDeskScaleAgents &&
                    std::all_of(by_agent.begin(), by_agent.end(), [](const auto& l) {
                      return static_cast<int>(l.size()) <= kDeskScaleEdgesPerAgent;
                    });
  std::vector<std::vector<int>> matchings =
      desk ? enumerate_u_matchings(inst) : random_matchings(inst, 4 * k + 8, 0x6d61746368ULL);
  if (matchings.empty()) throw GeometryError("no U-matching exists");

  std::vector<Vector> reduced_pts;
  for (const auto& mt : matchings) {
    Vector z = Vector::Zero(k);
    for (int e : mt) {
      if (reduced_index[e] >= 0) z(reduced_index[e]) = 1.0;
    }
    reduced_pts.push_back(z);
  }
  const HalfspaceSet set(k, cons);
  Vector center = centroid(reduced_pts, k);
  const double r = k > 0 ? set.slack_radius(center) : 1.0;
  if (k > 0 && !(r > 1e-9) && !(x_sandwich && x_sandwich->inner_center)) {
    throw GeometryError("matching polytope is not full-dimensional after removing the "
                        "agent equalities");
  }
  const double big_r = k > 0 ? std::sqrt(static_cast<double>(k)) : 1.0;
  ConvexBody xb = halfspace_body(cons, k, center, r, big_r, x_sandwich, "X");
  ConvexBody yb = halfspace_body(cons, k, center, r, big_r, y_sandwich, "Y");

  const Matrix a = popular_matching_matrix(inst);
  PayoffFunction f = PayoffFunction::bilinear(a, embed, embed, 1.0);
  std::optional<std::vector<Vector>> verts;
  std::optional<Certifier> cert;
  if (desk) {
    std::vector<Vector> v;
    for (const auto& mt : matchings) v.push_back(matching_indicator(inst, mt));
    verts = v;
    cert = Certifier{CertMethod::exact_vertex,
                     [a, v, embed](const VectorRef& x, const VectorRef& y) {
                       return gap_polytope_bilinear(a, v, v, embed.apply(x), embed.apply(y));
                     }};
  }
  return Instance{"popular_matching", std::move(xb), std::move(yb), std::move(f),
                  embed, embed, verts, verts, std::move(cert)};
}

// ---------------------------------------------------------------------------
// Submodular cover

std::vector<double> coverage_table(int ground_set_size,
                                   const std::vector<std::vector<int>>& sets) {
  const int n = static_cast<int>(sets.size());
  if (n > 30) throw ConfigError("too many sets for a subset table");
  if (ground_set_size < 1) throw ConfigError("ground set must be nonempty");
  std::vector<std::vector<char>> member(n, std::vector<char>(ground_set_size, 0));
  for (int i = 0; i < n; ++i) {
    for (int e : sets[i]) {
      if (e < 0 || e >= ground_set_size) {
        throw ConfigError("set " + std::to_string(i) + " has element " + std::to_string(e) +
                          " outside the ground set");
      }
      member[i][e] = 1;
    }
  }
  const std::size_t total = std::size_t{1} << n;
  std::vector<double> table(total, 0.0);
  for (std::size_t s = 1; s < total; ++s) {
    int covered = 0;
    for (int e = 0; e < ground_set_size; ++e) {
      for (int i = 0; i < n; ++i) {
        if ((s >> i & 1U) && member[i][e]) {
          ++covered;
          break;
        }
      }
    }
    table[s] = static_cast<double>(covered) / ground_set_size;
  }
  return table;
}

void validate_submodular(const std::vector<double>& f, int n, std::uint64_t seed) {
  if (n < 0 || n > 30) throw ConfigError("unsupported ground set size for f");
  const std::size_t total = std::size_t{1} << n;
  if (f.size() != total) {
    throw ConfigError("f table has " + std::to_string(f.size()) + " entries, expected " +
                      std::to_string(total));
  }
  constexpr double tol = 1e-12;
  for (std::size_t s = 0; s < total; ++s) {
    if (!std::isfinite(f[s]) || f[s] < -tol || f[s] > 1.0 + tol) {
      throw ConfigError("f(" + std::to_string(s) + ") lies outside [0, 1]");
    }
  }
  auto check = [&](std::size_t s, int i, int j) {
    const std::size_t si = s | (std::size_t{1} << i);
    if (f[si] < f[s] - tol) {
      throw ConfigError("f is not monotone at subset " + std::to_string(s) + " + " +
                        std::to_string(i));
    }
    if (j < 0) return;
    const std::size_t sj = s | (std::size_t{1} << j);
    if (f[si] + f[sj] < f[si | sj] + f[s] - tol) {
      throw ConfigError("f is not submodular at subset " + std::to_string(s) + " with " +
                        std::to_string(i) + ", " + std::to_string(j));
    }
  };
  if (n <= 12) {
    for (std::size_t s = 0; s < total; ++s) {
      for (int i = 0; i < n; ++i) {
        if (s >> i & 1U) continue;
        check(s, i, -1);
        for (int j = i + 1; j < n; ++j) {
          if (!(s >> j & 1U)) check(s, i, j);
        }
      }
    }
    return;
  }
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<std::size_t> pick_set(0, total - 1);
  std::uniform_int_distribution<int> pick_elem(0, n - 1);
  for (int t = 0; t < 10000; ++t) {
    const int i = pick_elem(gen);
    int j = pick_elem(gen);
    if (j == i) j = (i + 1) % n;
    const std::size_t s = pick_set(gen) & ~(std::size_t{1} << i) & ~(std::size_t{1} << j);
    check(s, i, n > 1 ? j : -1);
  }
}

bool polymatroid_contains(const std::vector<double>& f, int n, const VectorRef& y) {
  for (int i = 0; i < n; ++i) {
    if (!(y(i) >= 0.0)) return false;
  }
  const std::size_t total = std::size_t{1} << n;
  // Subset sums built incrementally from the lowest set bit.
  std::vector<double> sums(total, 0.0);
  for (std::size_t s = 1; s < total; ++s) {
    const int low = std::countr_zero(s);
    sums[s] = sums[s & (s - 1)] + y(low);
    if (sums[s] > f[s]) return false;
  }
  return true;
}

std::vector<Vector> polymatroid_vertices(const std::vector<double>& f, int n) {
  if (n > 8) throw ConfigError("polymatroid vertex enumeration limited to 8 sets");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Vector> out;
  // Every prefix-greedy point plus its truncations (the polymatroid is
  // down-closed, so vertices also include greedy points restricted to a
  // prefix of the order).
  do {
    for (int len = 0; len <= n; ++len) {
      Vector y = Vector::Zero(n);
      std::size_t prefix = 0;
      for (int k = 0; k < len; ++k) {
        const std::size_t next = prefix | (std::size_t{1} << perm[k]);
        y(perm[k]) = f[next] - f[prefix];
        prefix = next;
      }
      add_unique(out, y);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Instance build_submodular_cover(const SubmodularCoverInstance& inst,
                                const std::optional<SandwichOverride>& x_sandwich,
                                const std::optional<SandwichOverride>& y_sandwich) {
  const int n = static_cast<int>(inst.sets.size());
  if (n < 1) throw ConfigError("submodular cover needs at least one set");
  if (n > inst.n_limit) {
    throw ConfigError("submodular cover has " + std::to_string(n) +
                      " sets; brute-force membership is limited to " +
                      std::to_string(inst.n_limit));
  }
  const int ground = inst.ground_set_size;
  if (ground < 1) throw ConfigError("ground set must be nonempty");

  std::vector<int> count(ground, 0);
  for (int i = 0; i < n; ++i) {
    std::set<int> distinct(inst.sets[i].begin(), inst.sets[i].end());
    for (int e : distinct) {
      if (e < 0 || e >= ground) {
        throw ConfigError("set " + std::to_string(i) + " has element " + std::to_string(e) +
                          " outside the ground set");
      }
      ++count[e];
    }
  }
  int cmin = std::numeric_limits<int>::max();
  for (int e = 0; e < ground; ++e) {
    if (count[e] == 0) throw GeometryError("element " + std::to_string(e) + " is not covered");
    cmin = std::min(cmin, count[e]);
  }
  if (cmin < 2) {
    throw GeometryError("covering polytope has no interior: an element lies in a single set");
  }

  std::vector<double> f = inst.f_kind == "coverage" ? coverage_table(ground, inst.sets)
                                                    : inst.f_table;
  if (inst.f_kind != "coverage" && inst.f_kind != "table") {
    throw ConfigError("unknown f kind '" + inst.f_kind + "'");
  }
  validate_submodular(f, n);

  // Covering polytope P = {x ∈ [0,1]ⁿ : Σ_{i∋e} x_i ≥ 1 ∀e}.
  std::vector<Halfspace> cons;
  for (int i = 0; i < n; ++i) {
    cons.push_back({-Vector::Unit(n, i), 0.0});
    cons.push_back({Vector::Unit(n, i), 1.0});
  }
  for (int e = 0; e < ground; ++e) {
    Vector a = Vector::Zero(n);
    for (int i = 0; i < n; ++i) {
      if (std::find(inst.sets[i].begin(), inst.sets[i].end(), e) != inst.sets[i].end()) a(i) = -1.0;
    }
    cons.push_back({a, -1.0});
  }
  const double lambda = 0.5 * (1.0 + 1.0 / cmin);
  const Vector xc = Vector::Constant(n, lambda);
  const HalfspaceSet pset(n, cons);
  ConvexBody xb = halfspace_body(cons, n, xc, pset.slack_radius(xc),
                                 std::sqrt(static_cast<double>(n)), x_sandwich, "X");

  // Polymatroid P_f with center c·1, c = ½ min_S f(S)/|S|.
  const std::size_t total = std::size_t{1} << n;
  double c = std::numeric_limits<double>::infinity();
  for (std::size_t s = 1; s < total; ++s) c = std::min(c, f[s] / std::popcount(s));
  c *= 0.5;
  if (!(c > 0.0)) throw GeometryError("polymatroid has no interior: some f(S) is zero");
  double ry = c;
  for (std::size_t s = 1; s < total; ++s) {
    const int sz = std::popcount(s);
    ry = std::min(ry, (f[s] - c * sz) / std::sqrt(static_cast<double>(sz)));
  }
  double big_ry_sq = 0.0;
  for (int i = 0; i < n; ++i) big_ry_sq += f[std::size_t{1} << i] * f[std::size_t{1} << i];
  Vector yc = Vector::Constant(n, c);
  double big_ry = std::sqrt(big_ry_sq);
  if (y_sandwich) {
    if (y_sandwich->inner_center) yc = *y_sandwich->inner_center;
    if (y_sandwich->inner_radius) ry = *y_sandwich->inner_radius;
    if (y_sandwich->outer_radius) big_ry = *y_sandwich->outer_radius;
    if (yc.size() != n) throw DimensionError("Y: sandwich inner_center has wrong dimension");
    for (int i = 0; i < n; ++i) {
      for (double sgn : {-1.0, 1.0}) {
        const Vector p = yc + sgn * ry * Vector::Unit(n, i);
        if (!polymatroid_contains(f, n, p)) {
          throw GeometryError("Y: sandwich inner ball leaves the polymatroid");
        }
      }
    }
  }
  ConvexBody yb(n, [f, n](const VectorRef& y) { return polymatroid_contains(f, n, y); },
                yc, ry, big_ry, "Y");

  PayoffFunction payoff = PayoffFunction::bilinear(Matrix::Identity(n, n), 1.0);
  std::optional<std::vector<Vector>> xv, yv;
  std::optional<Certifier> cert;
  if (n <= 8) {
    xv = enumerate_vertices(pset);
    yv = polymatroid_vertices(f, n);
    if (xv && !xv->empty()) {
      cert = Certifier{CertMethod::exact_vertex,
                       [n, x = *xv, y = *yv](const VectorRef& p, const VectorRef& q) {
                         return gap_polytope_bilinear(Matrix::Identity(n, n), x, y, p, q);
                       }};
    }
  }
  return Instance{"submodular_cover", std::move(xb), std::move(yb), std::move(payoff),
                  AffineMap::identity(n), AffineMap::identity(n), xv, yv, std::move(cert)};
}

}  // namespace saddle
