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
#include <vector>

#include "saddle/budget.hpp"
#include "saddle/certify.hpp"
#include "saddle/convex_body.hpp"
#include "saddle/payoff.hpp"
#include "saddle/sampler.hpp"

namespace saddle {

struct SolverConfig {
  /// Target accuracy in original payoff units.
  double epsilon = 0.1;
  /// Sampler accuracy; defaults to epsilon_scaled / 4. Reported, not enforced.
  std::optional<double> delta;
  std::optional<std::int64_t> t_override;
  int max_restarts = 4;
  /// Hit-and-run steps per sample; defaults to 200 per body dimension.
  std::optional<int> walk_steps;
  double chord_tolerance = kDefaultChordTolerance;
  /// Start each walk at the previous sample of the same player.
  bool warm_start = true;
  std::uint64_t seed = 0;
  /// Stop a run as soon as an exact certifier shows gap ≤ epsilon at a
  /// checkpoint. Has no effect with a sampled certifier.
  bool early_stop = true;
  std::int64_t check_every = 50;
  /// Trace cadence; defaults to ⌈T/20⌉.
  std::optional<std::int64_t> trace_every;
  int sampled_gap_budget = 64;
  /// Random member pairs per side and iteration for the exponent concavity
  /// probe. 0 disables the probe.
  int concavity_pairs = 8;
  /// Grid per axis for the potential estimate in trace rows (needs N ≤ 4).
  int phi_grid = 0;
};

struct TraceRecord {
  /// Iterations completed, counted across all runs.
  std::int64_t t = 0;
  int run = 0;
  Vector xi;
  Vector eta;
  std::optional<double> gap_estimate;
  std::optional<double> phi_estimate;
  std::uint64_t membership_calls = 0;
  std::uint64_t evaluations = 0;
  double wall_ms = 0.0;
};

/// Running averages x(t), y(t) of one run.
struct SolverState {
  std::int64_t t = 0;
  Vector x;
  Vector y;
};

struct RunSummary {
  int run = 0;
  std::int64_t iterations = 0;
  double gap = 0.0;
  bool certified = false;
  bool stopped_early = false;
  /// Cumulative counters at the end of this run.
  CostCounters counters;
};

struct SolveReport {
  Certificate certificate;
  IterationBudget budget;
  double epsilon = 0.0;
  double epsilon_scaled = 0.0;
  double delta = 0.0;
  double width = 0.0;
  int walk_steps_x = 0;
  int walk_steps_y = 0;
  bool short_circuited = false;
  std::vector<RunSummary> runs;
  std::vector<TraceRecord> trace;
  double wall_ms = 0.0;
};

/// The two sampling targets of iteration t:
///   minimizer ∝ exp(-(ε t / 2)·F(ξ, y(t))),
///   maximizer ∝ exp(+(ε t / 2)·F(x(t), η)),
/// with F and ε already scaled. At t = 0 both are uniform.
struct IterationDensities {
  DensitySpec minimizer;
  DensitySpec maximizer;
};

IterationDensities iteration_densities(const ConvexBody& x_body,
                                       const ConvexBody& y_body,
                                       const ScaledPayoff& f, double eps_scaled,
                                       std::int64_t t, const Vector& x_t,
                                       const Vector& y_t);

/// Randomized fictitious play. Scales F and ε by the width, runs T
/// iterations (or until an exact checkpoint certifies), certifies, and
/// restarts on fresh streams while the gap exceeds ε. Without a certifier
/// the final gap is a sampled lower bound and never certified.
SolveReport solve(const ConvexBody& x_body, const ConvexBody& y_body,
                  const PayoffFunction& f, const SolverConfig& cfg,
                  const Certifier* certifier = nullptr);

/// Φ(t) = ∫∫ exp((ε t / 2)(F(x(t), η) - F(ξ, y(t)))) dξ dη by midpoint
/// quadrature on `grid` points per axis of each body's bounding box;
/// points outside the bodies contribute 0. The integrand factorizes, so the
/// tensor grid is summed as a product of the two marginal sums.
/// Requires m + n ≤ 4 and grid ≥ 32.
double potential_estimate(const ConvexBody& x_body, const ConvexBody& y_body,
                          const ScaledPayoff& f, double eps_scaled,
                          std::int64_t t, const VectorRef& x_t,
                          const VectorRef& y_t, int grid);

}  // namespace saddle
