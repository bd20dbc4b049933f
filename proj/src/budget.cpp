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

#include "saddle/budget.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace saddle {

namespace {

constexpr double kMaxIterations = 4.0e18;

std::int64_t ceil_iterations(double value) {
  if (!(value < kMaxIterations)) {
    throw InvariantViolation("iteration budget overflows 64 bits");
  }
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(value)));
}

struct Candidate {
  double alpha;
  std::int64_t T;
};

Candidate small_volume_branch(int N, double eps, double log_vol_lower) {
  const double alpha = 2.0 * (N * std::log(25.0 / eps) - log_vol_lower);
  return {alpha, ceil_iterations(6.0 * alpha / (eps * eps))};
}

Candidate large_volume_branch(int N, double eps, double log_vol_upper) {
  const double log_two_vol = std::max(0.0, std::numbers::ln2 + log_vol_upper);
  const double alpha =
      std::max(4.0 * (std::numbers::ln2 + N * std::log(24.0 / eps)),
               2.0 * std::sqrt(N * log_two_vol));
  return {alpha,
          ceil_iterations(6.0 * alpha / (eps * eps) +
                          6.0 * log_two_vol / (eps * eps))};
}

}  // namespace

double VolumeBounds::lower() const { return std::exp(log_lower); }
double VolumeBounds::upper() const { return std::exp(log_upper); }

double log_unit_ball_volume(int k) {
  if (k == 0) return 0.0;
  const double half = 0.5 * k;
  return half * std::log(std::numbers::pi) - std::lgamma(half + 1.0);
}

VolumeBounds volume_bounds(const ProductBody& z) {
  const int m = z.left.dimension();
  const int n = z.right.dimension();
  VolumeBounds v;
  v.log_lower = log_unit_ball_volume(m) + m * std::log(z.left.inner_radius()) +
                log_unit_ball_volume(n) + n * std::log(z.right.inner_radius());
  v.log_upper = log_unit_ball_volume(m) + m * std::log(z.left.outer_radius()) +
                log_unit_ball_volume(n) + n * std::log(z.right.outer_radius());
  return v;
}

std::string_view to_string(VolumeCase c) {
  return c == VolumeCase::small_volume ? "small_volume" : "large_volume";
}

BudgetPredicates check_budget_predicates(int N, double eps, double alpha,
                                         std::int64_t T, double log_vol_lower,
                                         double log_vol_upper) {
  const double t = static_cast<double>(T);
  BudgetPredicates p;
  p.range = alpha > 0.0 && alpha < 4.0 * eps * t;
  p.potential = p.range && (0.5 * alpha + N * std::log(alpha / (4.0 * eps * t)) +
                            log_vol_lower) > 0.0;
  const double log_two_vol = std::max(0.0, std::numbers::ln2 + log_vol_upper);
  p.iterations = t >= 6.0 / (eps * eps) * (alpha + log_two_vol);
  return p;
}

IterationBudget iteration_bound(int N, double eps, double log_vol_lower,
                                double log_vol_upper) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw ConfigError("scaled accuracy must lie in (0, 1)");
  }
  if (N < 0) throw ConfigError("negative dimension");
  if (log_vol_lower > log_vol_upper + 1e-12) {
    throw GeometryError("volume lower bound exceeds upper bound");
  }

  const double log_half = -std::numbers::ln2;
  IterationBudget budget;
  budget.log_vol_lower = log_vol_lower;
  budget.log_vol_upper = log_vol_upper;
  budget.vol_lower = std::exp(log_vol_lower);
  budget.vol_upper = std::exp(log_vol_upper);

  Candidate chosen{};
  if (log_vol_upper <= log_half) {
    chosen = small_volume_branch(N, eps, log_vol_lower);
    budget.case_tag = VolumeCase::small_volume;
  } else if (log_vol_lower > log_half) {
    chosen = large_volume_branch(N, eps, log_vol_upper);
    budget.case_tag = VolumeCase::large_volume;
  } else {
    const Candidate small = small_volume_branch(N, eps, log_vol_lower);
    const Candidate large = large_volume_branch(N, eps, log_vol_upper);
    if (small.T >= large.T) {
      chosen = small;
      budget.case_tag = VolumeCase::small_volume;
    } else {
      chosen = large;
      budget.case_tag = VolumeCase::large_volume;
    }
  }

  const double log_two_vol = std::max(0.0, std::numbers::ln2 + log_vol_upper);
  for (int round = 0; round <= 64; ++round) {
    const BudgetPredicates p = check_budget_predicates(
        N, eps, chosen.alpha, chosen.T, log_vol_lower, log_vol_upper);
    if (p.all()) {
      budget.alpha = chosen.alpha;
      budget.T = chosen.T;
      budget.predicates_hold = true;
      return budget;
    }
    if (p.range && !p.potential) {
      // A larger t only makes the potential condition harder; grow α and
      // recompute t from the iteration condition.
      chosen.alpha *= 2.0;
      chosen.T = std::max(chosen.T, ceil_iterations(6.0 / (eps * eps) *
                                                    (chosen.alpha + log_two_vol)));
    } else {
      chosen.T = ceil_iterations(2.0 * static_cast<double>(chosen.T));
    }
  }
  throw InvariantViolation("iteration budget predicates unsatisfiable");
}

IterationBudget iteration_bound(int N, double eps, const ProductBody& z) {
  const VolumeBounds v = volume_bounds(z);
  return iteration_bound(N, eps, v.log_lower, v.log_upper);
}

IterationBudget override_iterations(IterationBudget budget, int N, double eps,
                                    std::int64_t t_override) {
  if (t_override < 1) throw ConfigError("iteration override must be >= 1");
  budget.T = t_override;
  budget.overridden = true;
  budget.predicates_hold =
      check_budget_predicates(N, eps, budget.alpha, t_override,
                              budget.log_vol_lower, budget.log_vol_upper)
          .all();
  return budget;
}

}  // namespace saddle
