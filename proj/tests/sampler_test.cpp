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

#include <cmath>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include "oracles.hpp"
#include "saddle/sampler.hpp"

namespace saddle {
namespace {

constexpr double kAlpha = 0.01;
constexpr int kDraws = 10000;

std::vector<double> line_draws(const std::function<double(double)>& g, double lo, double hi,
                               std::uint64_t seed, LineSamplerStats* stats = nullptr) {
  Rng rng(seed);
  std::vector<double> out;
  out.reserve(kDraws);
  for (int i = 0; i < kDraws; ++i) out.push_back(sample_1d_logconcave(g, lo, hi, rng, stats));
  return out;
}

TEST(LineSampler, TruncatedExponentialPassesKs) {
  for (double rate : {0.0, 0.5, 3.0, 40.0, -7.0}) {
    const auto xs = line_draws([rate](double s) { return -rate * s; }, -1.0, 2.0, 17);
    const double d = oracle::ks_statistic(xs, [rate](double x) {
      return oracle::truncated_exponential_cdf(x, rate, -1.0, 2.0);
    });
    EXPECT_GT(oracle::ks_pvalue(d, xs.size()), kAlpha) << "rate " << rate << " D " << d;
  }
}

TEST(LineSampler, TruncatedGaussianPassesKs) {
  struct Case {
    double mu, sigma, a, b;
  };
  for (const Case& c : {Case{0.0, 1.0, -2.0, 2.0}, Case{3.0, 0.5, -1.0, 2.0},
                        Case{0.1, 0.01, -1.0, 1.0}, Case{-5.0, 2.0, 0.0, 10.0}}) {
    auto g = [c](double s) { return -0.5 * (s - c.mu) * (s - c.mu) / (c.sigma * c.sigma); };
    const auto xs = line_draws(g, c.a, c.b, 23);
    const double d = oracle::ks_statistic(xs, [c](double x) {
      return oracle::truncated_normal_cdf(x, c.mu, c.sigma, c.a, c.b);
    });
    EXPECT_GT(oracle::ks_pvalue(d, xs.size()), kAlpha) << "mu " << c.mu << " sigma " << c.sigma;
  }
}

TEST(LineSampler, ChiSquareOnBinnedLaplace) {
  // Density ∝ exp(-|s|) on [-3, 3] has a kink at the mode.
  const auto xs = line_draws([](double s) { return -std::abs(s); }, -3.0, 3.0, 29);
  const int bins = 20;
  std::vector<double> observed(bins, 0.0);
  for (double x : xs) observed[std::min(bins - 1, static_cast<int>((x + 3.0) / 6.0 * bins))] += 1;
  auto cdf = [](double x) {
    const double z = 2.0 * (1.0 - std::exp(-3.0));
    return x < 0 ? (std::exp(x) - std::exp(-3.0)) / z : 0.5 + (1.0 - std::exp(-x)) / z;
  };
  double chi2 = 0.0;
  for (int b = 0; b < bins; ++b) {
    const double lo = -3.0 + 6.0 * b / bins;
    const double hi = -3.0 + 6.0 * (b + 1) / bins;
    const double expected = kDraws * (cdf(hi) - cdf(lo));
    chi2 += (observed[b] - expected) * (observed[b] - expected) / expected;
  }
  const boost::math::chi_squared dist(bins - 1);
  EXPECT_GT(boost::math::cdf(boost::math::complement(dist, chi2)), kAlpha) << chi2;
}

TEST(LineSampler, RejectsNonFiniteExponent) {
  Rng rng(1);
  EXPECT_THROW(sample_1d_logconcave([](double) { return std::nan(""); }, 0, 1, rng),
               SamplerError);
  EXPECT_THROW(sample_1d_logconcave([](double s) { return s > 0.5 ? -INFINITY : 0.0; }, 0, 1, rng),
               SamplerError);
  EXPECT_THROW(sample_1d_logconcave([](double) { return 0.0; }, 1, 1, rng), SamplerError);
}

TEST(LineSampler, StaysInsideTheInterval) {
  Rng rng(3);
  LineSamplerStats stats;
  for (int i = 0; i < 2000; ++i) {
    const double x = sample_1d_logconcave([](double s) { return 300.0 * s; }, -0.25, 0.75, rng, &stats);
    ASSERT_GE(x, -0.25);
    ASSERT_LE(x, 0.75);
  }
  EXPECT_EQ(stats.draws, 2000u);
  EXPECT_EQ(stats.envelope_violations, 0u);
}

TEST(HitAndRun, UniformBoxPassesPerCoordinateKs) {
  Vector lower(2), upper(2);
  lower << 0.0, -1.0;
  upper << 1.0, 3.0;
  const ConvexBody box = make_box_body(lower, upper);
  HitAndRunWalker walker(uniform_density(box), box.inner_center(), 41);
  const int steps = default_walk_steps(2);
  walker.advance(steps);
  std::vector<std::vector<double>> coords(2);
  for (int i = 0; i < kDraws; ++i) {
    const Vector& p = walker.advance(steps);
    for (int k = 0; k < 2; ++k) coords[k].push_back(p(k));
  }
  for (int k = 0; k < 2; ++k) {
    const double a = lower(k), b = upper(k);
    const double d = oracle::ks_statistic(coords[k], [a, b](double x) {
      return std::clamp((x - a) / (b - a), 0.0, 1.0);
    });
    EXPECT_GT(oracle::ks_pvalue(d, kDraws), kAlpha) << "coordinate " << k;
  }
}

TEST(HitAndRun, ExponentialOnIntervalPassesKs) {
  const ConvexBody seg = make_box_body(Vector::Zero(1), Vector::Ones(1));
  DensitySpec spec{seg, [](const VectorRef& z) { return -4.0 * z(0); }, "exp"};
  HitAndRunWalker walker(spec, seg.inner_center(), 43);
  std::vector<double> xs;
  // On a segment every chord is the whole segment, so one step is an
  // independent draw.
  for (int i = 0; i < kDraws; ++i) xs.push_back(walker.advance(1)(0));
  const double d = oracle::ks_statistic(
      xs, [](double x) { return oracle::truncated_exponential_cdf(x, 4.0, 0.0, 1.0); });
  EXPECT_GT(oracle::ks_pvalue(d, kDraws), kAlpha);
}

TEST(HitAndRun, MembershipCostPerStepIsOneChord) {
  const ConvexBody ball = make_ball_body(2, 1.0);
  HitAndRunWalker walker(uniform_density(ball), Vector::Zero(2), 5);
  const auto before = ball.membership_calls();
  walker.advance(10);
  // One chord per step plus the closing membership assertion.
  EXPECT_EQ(ball.membership_calls() - before, 10u * 65u + 1u);
}

TEST(HitAndRun, SameSeedSamePath) {
  const ConvexBody ball = make_ball_body(3, 2.0);
  WalkConfig cfg{50, kDefaultChordTolerance, 99, std::nullopt};
  const Vector a = sample(uniform_density(ball), cfg);
  const Vector b = sample(uniform_density(ball), cfg);
  EXPECT_EQ(a, b);
  cfg.rng_seed = 100;
  EXPECT_NE(a, sample(uniform_density(ball), cfg));
}

TEST(HitAndRun, WarmStartOutsideBodyThrows) {
  const ConvexBody ball = make_ball_body(2, 1.0);
  WalkConfig cfg{1, kDefaultChordTolerance, 1, Vector::Constant(2, 5.0)};
  EXPECT_THROW(sample(uniform_density(ball), cfg), GeometryError);
}

TEST(Concavity, FlagsConvexExponentOnly) {
  const Vector u = Vector::Constant(2, -1.0);
  const Vector v = Vector::Constant(2, 1.0);
  EXPECT_LE(concavity_violation([](const VectorRef& z) { return 3.0 * z.sum() - 1.0; }, u, v),
            kConcavitySlack);
  EXPECT_LE(concavity_violation([](const VectorRef& z) { return -z.squaredNorm(); }, u, v), 0.0);
  EXPECT_GT(concavity_violation([](const VectorRef& z) { return z.squaredNorm(); }, u, v), 1.0);
}

}  // namespace
}  // namespace saddle
