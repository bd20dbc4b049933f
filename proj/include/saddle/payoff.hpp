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

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>

#include "saddle/types.hpp"

namespace saddle {

/// z ↦ linear·z + offset. Maps body coordinates back to the coordinates a
/// payoff matrix is written in.
struct AffineMap {
  Matrix linear;
  Vector offset;

  static AffineMap identity(int dimension);

  int input_dimension() const { return static_cast<int>(linear.cols()); }
  int output_dimension() const { return static_cast<int>(linear.rows()); }
  Vector apply(const VectorRef& z) const;
};

/// x̃ ↦ (x̃, 1 - Σx̃): the probability simplex with its last coordinate
/// eliminated.
AffineMap simplex_embedding(int reduced_dimension);

enum class PayoffKind { bilinear, general };

/// A convex-concave payoff F(x, y) over body coordinates, with its width
/// bound ρ ≥ sup |F|. Copies share the evaluation counter.
class PayoffFunction {
 public:
  using Evaluator = std::function<double(const VectorRef&, const VectorRef&)>;

  /// F(x, y) = xᵀ A y.
  static PayoffFunction bilinear(Matrix a, double width_bound);

  /// F(x, y) = E_x(x)ᵀ A E_y(y) for affine embeddings E_x, E_y.
  static PayoffFunction bilinear(Matrix a, AffineMap embed_x,
                                 AffineMap embed_y, double width_bound);

  /// Black-box evaluator; the caller vouches for convex-concavity and for
  /// width_bound ≥ sup |F|.
  static PayoffFunction general(int m, int n, Evaluator evaluator,
                                double width_bound);

  int m() const { return m_; }
  int n() const { return n_; }
  PayoffKind kind() const { return kind_; }
  double width_bound() const { return width_; }

  /// Matrix in embedded coordinates (bilinear kind only).
  const Matrix& matrix() const { return a_; }
  const AffineMap& embed_x() const { return embed_x_; }
  const AffineMap& embed_y() const { return embed_y_; }

  /// Counted evaluation. Throws DimensionError on mismatched inputs.
  double evaluate(const VectorRef& x, const VectorRef& y) const;

  std::uint64_t evaluations() const {
    return evaluations_->load(std::memory_order_relaxed);
  }

  PayoffFunction with_width_bound(double width_bound) const;

 private:
  PayoffFunction() = default;

  int m_ = 0;
  int n_ = 0;
  PayoffKind kind_ = PayoffKind::general;
  double width_ = 0.0;
  Matrix a_;
  AffineMap embed_x_;
  AffineMap embed_y_;
  // Bilinear kind reduced to body coordinates:
  //   F = xᵀ B y + bx·x + by·y + c0.
  Matrix reduced_;
  Vector bx_;
  Vector by_;
  double c0_ = 0.0;
  Evaluator evaluator_;
  std::shared_ptr<std::atomic<std::uint64_t>> evaluations_;
};

/// √(mn)·R_X·R_Y·max|a_ij|, an upper bound on max |xᵀAy| over the balls of
/// radius R_X and R_Y.
double width_bound_bilinear(const Matrix& a, double outer_radius_x,
                            double outer_radius_y);

/// F / ρ. Every evaluation checks |F/ρ| ≤ 1 and throws InvariantViolation
/// on the first pair that breaks it.
class ScaledPayoff {
 public:
  explicit ScaledPayoff(PayoffFunction base);

  const PayoffFunction& base() const { return base_; }
  double scale() const { return scale_; }
  double evaluate(const VectorRef& x, const VectorRef& y) const;

 private:
  PayoffFunction base_;
  double scale_;
};

/// Throws ConfigError("constant-zero payoff") when ρ = 0.
ScaledPayoff scale_payoff(const PayoffFunction& f);

}  // namespace saddle
