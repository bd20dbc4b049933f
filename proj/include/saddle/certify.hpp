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
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "saddle/convex_body.hpp"
#include "saddle/payoff.hpp"
#include "saddle/types.hpp"

namespace saddle {

enum class CertMethod { exact_vertex, exact_lp, brute_force, sampled_estimate };

std::string_view to_string(CertMethod method);
std::optional<CertMethod> cert_method_from_string(std::string_view name);

inline bool is_exact(CertMethod method) {
  return method != CertMethod::sampled_estimate;
}

struct CostCounters {
  std::uint64_t membership_calls_x = 0;
  std::uint64_t membership_calls_y = 0;
  std::uint64_t payoff_evaluations = 0;
  std::int64_t iterations = 0;
};

/// A candidate pair with its duality gap sup_y F(x*, y) - inf_x F(x, y*) in
/// original payoff units. `certified` is set only when an exact method
/// showed gap ≤ ε.
struct Certificate {
  Vector x_star;
  Vector y_star;
  double gap = 0.0;
  CertMethod method = CertMethod::sampled_estimate;
  bool certified = false;
  CostCounters cost;
  int runs_used = 0;
};

/// Matrix game on simplices: max_j (pᵀA)_j - min_i (Aq)_i. p and q must be
/// probability vectors up to 1e-9 (they are clipped and renormalized);
/// anything further off throws Error.
double gap_matrix_game(const Matrix& a, const VectorRef& p, const VectorRef& q);

/// Bilinear game over polytopes given by vertex lists:
/// max_v xᵀAv - min_u uᵀAy.
double gap_polytope_bilinear(const Matrix& a,
                             const std::vector<Vector>& x_vertices,
                             const std::vector<Vector>& y_vertices,
                             const VectorRef& x, const VectorRef& y);

struct SampledGapConfig {
  int budget = 64;
  /// Samples η ∝ exp(scale·F(x, η)) and ξ ∝ exp(-scale·F(ξ, y)).
  double exponent_scale = 0.0;
  int steps_per_sample = 0;  // 0: default walk length per body
  double chord_tolerance = kDefaultChordTolerance;
  std::uint64_t seed = 0;
};

/// Lower bound on the true gap from `budget` sampled responses on each side
/// (the candidate pair itself is included, so the result is ≥ 0). Draws
/// come from one chain per side, so a larger budget with the same seed
/// pools a superset of samples.
double gap_sampled(const ConvexBody& x_body, const ConvexBody& y_body,
                   const PayoffFunction& f, const VectorRef& x,
                   const VectorRef& y, const SampledGapConfig& cfg);

/// Gap oracle bound to one instance, evaluated in body coordinates.
struct Certifier {
  CertMethod method = CertMethod::sampled_estimate;
  std::function<double(const VectorRef&, const VectorRef&)> gap;
};

}  // namespace saddle
