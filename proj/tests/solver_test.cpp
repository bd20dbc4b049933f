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

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "saddle/instances.hpp"
#include "saddle/solver.hpp"

namespace saddle {
namespace {

Instance square_game() {
  const std::vector<Halfspace> seg = {{Vector::Constant(1, 1.0), 1.0},
                                      {Vector::Constant(1, -1.0), 1.0}};
  return build_polytope_bilinear(Matrix::Ones(1, 1), seg, seg);
}

Instance asymmetric_game() {
  Matrix a(2, 2);
  a << 3, -1, -2, 1;
  return build_matrix_game(a);
}

SolverConfig quick(double eps, std::uint64_t seed) {
  SolverConfig cfg;
  cfg.epsilon = eps;
  cfg.seed = seed;
  cfg.walk_steps = 20;
  return cfg;
}

TEST(Solver, ZeroPayoffShortCircuits) {
  const Instance inst = build_matrix_game(Matrix::Zero(1, 1));
  const SolveReport r = solve(inst.x_body, inst.y_body, inst.payoff, quick(0.1, 1),
                              &*inst.certifier);
  EXPECT_TRUE(r.short_circuited);
  EXPECT_TRUE(r.certificate.certified);
  EXPECT_EQ(r.certificate.gap, 0.0);
  EXPECT_EQ(r.certificate.cost.iterations, 0);
}

TEST(Solver, EpsilonAboveWidthIsRejected) {
  const Instance inst = square_game();
  EXPECT_THROW(solve(inst.x_body, inst.y_body, inst.payoff, quick(1.0, 1), &*inst.certifier),
               ConfigError);
  EXPECT_THROW(solve(inst.x_body, inst.y_body, inst.payoff, quick(-0.5, 1), &*inst.certifier),
               ConfigError);
}

TEST(Solver, FirstIterationDensitiesAreUniform) {
  const Instance inst = square_game();
  const ScaledPayoff f(inst.payoff);
  const IterationDensities d0 = iteration_densities(inst.x_body, inst.y_body, f, 0.5, 0,
                                                    Vector::Zero(1), Vector::Zero(1));
  EXPECT_FALSE(d0.minimizer.exponent);
  EXPECT_FALSE(d0.maximizer.exponent);
  const Vector xt = Vector::Constant(1, 0.4), yt = Vector::Constant(1, -0.2);
  const IterationDensities d = iteration_densities(inst.x_body, inst.y_body, f, 0.5, 10, xt, yt);
  const Vector p = Vector::Constant(1, 0.3);
  EXPECT_NEAR(d.minimizer.exponent(p), -0.25 * 10 * 0.3 * -0.2, 1e-15);
  EXPECT_NEAR(d.maximizer.exponent(p), 0.25 * 10 * 0.4 * 0.3, 1e-15);
}

TEST(Solver, AsymmetricGameCertifies) {
  const Instance inst = asymmetric_game();
  const SolveReport r = solve(inst.x_body, inst.y_body, inst.payoff, quick(0.5, 3),
                              &*inst.certifier);
  EXPECT_TRUE(r.certificate.certified);
  EXPECT_LE(r.certificate.gap, 0.5);
  // Value 1/7 at p = (3/7, 4/7).
  const Vector p = inst.embed_x.apply(r.certificate.x_star);
  const Vector q = inst.embed_y.apply(r.certificate.y_star);
  const Matrix& a = inst.payoff.matrix();
  EXPECT_LE((a * q).minCoeff(), 1.0 / 7 + 1e-12);
  EXPECT_GE((a.transpose() * p).maxCoeff(), 1.0 / 7 - 1e-12);
}

TEST(Solver, SameSeedSameReport) {
  const Instance inst = asymmetric_game();
  const SolveReport a = solve(inst.x_body, inst.y_body, inst.payoff, quick(0.5, 11),
                              &*inst.certifier);
  const SolveReport b = solve(inst.x_body, inst.y_body, inst.payoff, quick(0.5, 11),
                              &*inst.certifier);
  EXPECT_EQ(a.certificate.x_star, b.certificate.x_star);
  EXPECT_EQ(a.certificate.y_star, b.certificate.y_star);
  EXPECT_EQ(a.certificate.gap, b.certificate.gap);
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) EXPECT_EQ(a.trace[i].xi, b.trace[i].xi);
}

TEST(Solver, OverrideTooShortIsUncertifiedAfterAllRestarts) {
  const Instance inst = asymmetric_game();
  SolverConfig cfg = quick(0.05, 2);
  cfg.t_override = 3;
  cfg.max_restarts = 2;
  const SolveReport r = solve(inst.x_body, inst.y_body, inst.payoff, cfg, &*inst.certifier);
  EXPECT_FALSE(r.certificate.certified);
  EXPECT_EQ(r.runs.size(), 3u);
  EXPECT_EQ(r.certificate.cost.iterations, 9);
  EXPECT_TRUE(r.budget.overridden);
  EXPECT_FALSE(r.budget.predicates_hold);
  for (std::size_t i = 1; i < r.runs.size(); ++i) {
    EXPECT_GE(r.runs[i].counters.membership_calls_x, r.runs[i - 1].counters.membership_calls_x);
    EXPECT_GE(r.runs[i].counters.membership_calls_y, r.runs[i - 1].counters.membership_calls_y);
    EXPECT_GE(r.runs[i].counters.payoff_evaluations, r.runs[i - 1].counters.payoff_evaluations);
  }
  EXPECT_GE(r.certificate.gap, 0.0);
}

TEST(Solver, TraceIsStrictlyIncreasing) {
  const Instance inst = asymmetric_game();
  SolverConfig cfg = quick(0.05, 5);
  cfg.t_override = 40;
  cfg.trace_every = 7;
  cfg.max_restarts = 1;
  const SolveReport r = solve(inst.x_body, inst.y_body, inst.payoff, cfg, &*inst.certifier);
  ASSERT_FALSE(r.trace.empty());
  for (std::size_t i = 1; i < r.trace.size(); ++i) EXPECT_GT(r.trace[i].t, r.trace[i - 1].t);
  EXPECT_EQ(r.trace.back().t, r.certificate.cost.iterations);
}

TEST(Solver, SampledCertifierNeverCertifies) {
  const Instance inst = square_game();
  SolverConfig cfg = quick(0.5, 4);
  cfg.t_override = 30;
  cfg.max_restarts = 0;
  const SolveReport r = solve(inst.x_body, inst.y_body, inst.payoff, cfg, nullptr);
  EXPECT_EQ(r.certificate.method, CertMethod::sampled_estimate);
  EXPECT_FALSE(r.certificate.certified);
}

TEST(Solver, IterateAndCountersMatchBodies) {
  const Instance inst = square_game();
  const auto x0 = inst.x_body.membership_calls();
  const auto y0 = inst.y_body.membership_calls();
  SolverConfig cfg = quick(0.3, 8);
  cfg.t_override = 25;
  cfg.max_restarts = 0;
  cfg.early_stop = false;
  const SolveReport r = solve(inst.x_body, inst.y_body, inst.payoff, cfg, &*inst.certifier);
  EXPECT_EQ(r.certificate.cost.membership_calls_x, inst.x_body.membership_calls());
  EXPECT_EQ(r.certificate.cost.membership_calls_y, inst.y_body.membership_calls());
  EXPECT_GT(inst.x_body.membership_calls() - x0, 25u * 20u * 65u);
  EXPECT_GT(inst.y_body.membership_calls() - y0, 25u * 20u * 65u);
  EXPECT_TRUE(inst.x_body.contains(r.certificate.x_star));
  EXPECT_TRUE(inst.y_body.contains(r.certificate.y_star));
}

TEST(Potential, MatchesDenseReferenceQuadrature) {
  const Instance inst = square_game();
  const ScaledPayoff f(inst.payoff);
  for (std::int64_t t : {0, 5, 40}) {
    for (double xt : {-0.3, 0.0, 0.7}) {
      const double yt = 0.5 * xt - 0.1;
      const double ours = potential_estimate(inst.x_body, inst.y_body, f, 0.5, t,
                                             Vector::Constant(1, xt), Vector::Constant(1, yt),
                                             1000);
      const double ref = oracle::potential_square(0.5, static_cast<double>(t), xt, yt,
                                                  inst.payoff.width_bound(), 1000);
      EXPECT_NEAR(ours / ref, 1.0, 1e-9) << t << " " << xt;
    }
  }
  EXPECT_NEAR(potential_estimate(inst.x_body, inst.y_body, f, 0.5, 0, Vector::Zero(1),
                                 Vector::Zero(1), 64),
              4.0, 1e-12);
}

TEST(Potential, RejectsLargeDimensionsAndCoarseGrids) {
  const Instance inst = build_matrix_game(Matrix::Identity(4, 4));
  const ScaledPayoff f(inst.payoff);
  EXPECT_THROW(potential_estimate(inst.x_body, inst.y_body, f, 0.1, 1, inst.x_body.inner_center(),
                                  inst.y_body.inner_center(), 64),
               ConfigError);
  const Instance sq = square_game();
  const ScaledPayoff g(sq.payoff);
  EXPECT_THROW(potential_estimate(sq.x_body, sq.y_body, g, 0.1, 1, Vector::Zero(1),
                                  Vector::Zero(1), 8),
               ConfigError);
}

}  // namespace
}  // namespace saddle
