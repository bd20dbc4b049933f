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
#include <string>

#include "saddle/convex_body.hpp"
#include "saddle/rng.hpp"
#include "saddle/types.hpp"

namespace saddle {

/// Target density ∝ exp(exponent(z)) on `body`; `exponent` must be concave
/// and finite on the body.
struct DensitySpec {
  using Exponent = std::function<double(const VectorRef&)>;

  ConvexBody body;
  Exponent exponent;
  std::string label;
};

/// Density ∝ 1 on the body.
DensitySpec uniform_density(const ConvexBody& body);

struct WalkConfig {
  int steps_per_sample = 1;
  double chord_tolerance = kDefaultChordTolerance;
  std::uint64_t rng_seed = 0;
  std::optional<Vector> warm_start;
};

/// Walk length used when none is configured: 200 steps per dimension.
int default_walk_steps(int dimension);

/// Counters for the 1-D chord sampler, mostly for tests and diagnostics.
struct LineSamplerStats {
  std::uint64_t draws = 0;
  std::uint64_t proposals = 0;
  std::uint64_t grid_fallbacks = 0;
  std::uint64_t envelope_violations = 0;

  LineSamplerStats& operator+=(const LineSamplerStats& other) {
    draws += other.draws;
    proposals += other.proposals;
    grid_fallbacks += other.grid_fallbacks;
    envelope_violations += other.envelope_violations;
    return *this;
  }
};

inline constexpr int kMaxRejections = 10000;
inline constexpr int kFallbackGridPoints = 512;

/// Draws s ∈ [lo, hi] with density ∝ exp(g_line(s)) for concave g_line.
///
/// The mode is bracketed by golden-section search and every probed point
/// becomes a knot of a piecewise exp-linear envelope: on each gap between
/// knots, the secant through the neighbouring pair of knots, extended into
/// the gap, upper-bounds a concave function. Proposals from the envelope are
/// accepted with probability exp(g - envelope). After kMaxRejections
/// proposals the draw falls back to inverse-CDF sampling on a
/// kFallbackGridPoints grid. NaN from g_line throws SamplerError.
double sample_1d_logconcave(const std::function<double(double)>& g_line,
                            double lo, double hi, Rng& rng,
                            LineSamplerStats* stats = nullptr);

/// One hit-and-run step: uniform direction, chord through `current`, then a
/// draw from the density restricted to the chord. The returned point is
/// checked for membership (one oracle call).
Vector hit_and_run_step(const DensitySpec& spec, const VectorRef& current,
                        Rng& rng,
                        double chord_tolerance = kDefaultChordTolerance,
                        LineSamplerStats* stats = nullptr);

/// Runs cfg.steps_per_sample hit-and-run steps from cfg.warm_start (or the
/// body's inner center) and returns the final point. Deterministic in
/// (spec, cfg).
Vector sample(const DensitySpec& spec, const WalkConfig& cfg,
              LineSamplerStats* stats = nullptr);

/// A hit-and-run chain that keeps its position between calls. Used for
/// thinned sample sequences where consecutive draws share one stream.
class HitAndRunWalker {
 public:
  HitAndRunWalker(DensitySpec spec, Vector start, std::uint64_t seed,
                  double chord_tolerance = kDefaultChordTolerance);

  /// Advances `steps` steps and returns the new position.
  const Vector& advance(int steps);

  const Vector& position() const { return position_; }
  const LineSamplerStats& stats() const { return stats_; }

 private:
  DensitySpec spec_;
  Vector position_;
  Rng rng_;
  double tol_;
  LineSamplerStats stats_;
  Vector direction_;
  Vector scratch_;
  Vector probe_;
};

/// Empirical concavity probe: for each pair and λ ∈ {1/4, 1/2, 3/4} checks
/// g(λu + (1-λ)v) ≥ λg(u) + (1-λ)g(v). Returns the largest shortfall
/// λg(u) + (1-λ)g(v) - g(λu + (1-λ)v); the probe passes when it is at most
/// kConcavitySlack.
double concavity_violation(const DensitySpec::Exponent& g, const VectorRef& u,
                           const VectorRef& v);

inline constexpr double kConcavitySlack = 1e-7;

}  // namespace saddle
