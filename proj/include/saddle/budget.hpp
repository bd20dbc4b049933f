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
#include <string_view>

#include "saddle/convex_body.hpp"

namespace saddle {

/// Volume of the product body bracketed by its ball sandwich. The log
/// values are authoritative; the linear ones may under- or overflow.
struct VolumeBounds {
  double log_lower = 0.0;
  double log_upper = 0.0;

  double lower() const;
  double upper() const;
};

/// log of the volume of the k-dimensional unit ball (0 for k = 0).
double log_unit_ball_volume(int k);

VolumeBounds volume_bounds(const ProductBody& z);

enum class VolumeCase { small_volume, large_volume };

std::string_view to_string(VolumeCase c);

/// Iteration count T and the auxiliary α that certify it.
struct IterationBudget {
  double alpha = 0.0;
  std::int64_t T = 0;
  double vol_lower = 0.0;
  double vol_upper = 0.0;
  double log_vol_lower = 0.0;
  double log_vol_upper = 0.0;
  VolumeCase case_tag = VolumeCase::small_volume;
  /// All three feasibility predicates hold for (alpha, T).
  bool predicates_hold = false;
  /// T came from a user override rather than the bound.
  bool overridden = false;
};

/// The three feasibility conditions on (α, t):
///   range:      0 < α < 4εt
///   potential:  α/2 + N ln(α/(4εt)) + ln vol_lower > 0
///   iterations: t ≥ (6/ε²)(α + max{0, ln(2·vol_upper)})
/// Each uses the volume bound that makes it hardest to satisfy.
struct BudgetPredicates {
  bool range = false;
  bool potential = false;
  bool iterations = false;

  bool all() const { return range && potential && iterations; }
};

BudgetPredicates check_budget_predicates(int N, double eps, double alpha,
                                         std::int64_t T, double log_vol_lower,
                                         double log_vol_upper);

/// Iteration budget for accuracy eps (already scaled into (0, 1)).
///
/// small volume (vol_upper ≤ 1/2): α = 2(N ln(25/ε) - ln vol_lower),
///                                 T = ⌈6α/ε²⌉
/// large volume (vol_lower > 1/2): α = max{4(ln 2 + N ln(24/ε)),
///                                         2√(N ln(2 vol_upper))},
///                                 T = ⌈(6/ε²)(α + ln(2 vol_upper))⌉
/// When the bounds straddle 1/2 the branch with the larger T is taken. The
/// result is then repaired until all predicates hold: α is doubled while the
/// potential predicate fails (with T recomputed from α), T is doubled while
/// the range or iteration predicate fails.
IterationBudget iteration_bound(int N, double eps, const ProductBody& z);
IterationBudget iteration_bound(int N, double eps, double log_vol_lower,
                                double log_vol_upper);

/// Replaces T by `t_override`; predicates are re-evaluated and reported but
/// not enforced.
IterationBudget override_iterations(IterationBudget budget, int N, double eps,
                                    std::int64_t t_override);

}  // namespace saddle
