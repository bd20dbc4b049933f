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
#include "saddle/certify.hpp"

namespace saddle {
namespace {

Matrix pennies() {
  Matrix a(2, 2);
  a << 1, -1, -1, 1;
  return a;
}

Matrix rps() {
  Matrix a(3, 3);
  a << 0, -1, 1, 1, 0, -1, -1, 1, 0;
  return a;
}

oracle::Table table(const Matrix& a) {
  oracle::Table t(a.rows(), std::vector<double>(a.cols()));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) t[i][j] = a(i, j);
  return t;
}

Vector random_simplex_point(int k, std::mt19937_64& gen) {
  std::exponential_distribution<double> e(1.0);
  Vector p(k);
  for (int i = 0; i < k; ++i) p(i) = e(gen);
  return p / p.sum();
}

TEST(MatrixGameGap, KnownPoints) {
  EXPECT_NEAR(gap_matrix_game(pennies(), Vector::Constant(2, 0.5), Vector::Constant(2, 0.5)),
              0.0, 1e-15);
  Vector e1 = Vector::Unit(2, 0);
  EXPECT_NEAR(gap_matrix_game(pennies(), e1, e1), 2.0, 1e-15);
  EXPECT_NEAR(gap_matrix_game(rps(), Vector::Constant(3, 1.0 / 3), Vector::Constant(3, 1.0 / 3)),
              0.0, 1e-15);
}

TEST(MatrixGameGap, RejectsNonDistributions) {
  Vector p(2);
  p << 0.7, 0.7;
  EXPECT_THROW(gap_matrix_game(pennies(), p, Vector::Constant(2, 0.5)), Error);
}

TEST(MatrixGameGap, WeakDualityBracketsTheLpValue) {
  std::mt19937_64 gen(9);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 2 + trial % 3, n = 2 + (trial / 3) % 3;
    Matrix a(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = nd(gen);
    const double v = oracle::matrix_game_value(table(a));
    const Vector p = random_simplex_point(m, gen), q = random_simplex_point(n, gen);
    const double upper = (a.transpose() * p).maxCoeff();
    const double lower = (a * q).minCoeff();
    EXPECT_GE(upper, v - 1e-9);
    EXPECT_LE(lower, v + 1e-9);
    const double gap = gap_matrix_game(a, p, q);
    EXPECT_GE(gap, 0.0);
    EXPECT_NEAR(gap, upper - lower, 1e-12);
  }
}

TEST(PolytopeGap, AgreesWithMatrixGameOnSimplexVertices) {
  std::mt19937_64 gen(4);
  const Matrix a = rps();
  std::vector<Vector> verts;
  for (int i = 0; i < 3; ++i) verts.push_back(Vector::Unit(3, i));
  for (int t = 0; t < 20; ++t) {
    const Vector p = random_simplex_point(3, gen), q = random_simplex_point(3, gen);
    EXPECT_NEAR(gap_polytope_bilinear(a, verts, verts, p, q), gap_matrix_game(a, p, q), 1e-12);
  }
}

TEST(SampledGap, IsALowerBoundOfTheExactGap) {
  // F(x, y) = x·y on [0,1]²: sup_y F(x0, y) = x0 and inf_x F(x, y0) = 0.
  const ConvexBody seg = make_box_body(Vector::Zero(1), Vector::Ones(1));
  const PayoffFunction f = PayoffFunction::bilinear(Matrix::Ones(1, 1), 1.0);
  for (double x0 : {0.1, 0.5, 0.9}) {
    for (double y0 : {0.2, 0.8}) {
      SampledGapConfig cfg;
      cfg.budget = 256;
      cfg.seed = 12;
      const double exact = x0;
      const double est = gap_sampled(seg, seg, f, Vector::Constant(1, x0),
                                     Vector::Constant(1, y0), cfg);
      EXPECT_LE(est, exact + 1e-12);
      EXPECT_GE(est, exact - 0.05) << x0 << " " << y0;
    }
  }
}

TEST(CertMethod, RoundTripsThroughNames) {
  for (CertMethod m : {CertMethod::exact_vertex, CertMethod::exact_lp, CertMethod::brute_force,
                       CertMethod::sampled_estimate}) {
    EXPECT_EQ(cert_method_from_string(to_string(m)), m);
  }
  EXPECT_FALSE(cert_method_from_string("guess").has_value());
  EXPECT_FALSE(is_exact(CertMethod::sampled_estimate));
}

}  // namespace
}  // namespace saddle
