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

#include "saddle/payoff.hpp"

#include <cmath>
#include <sstream>

namespace saddle {

AffineMap AffineMap::identity(int dimension) {
  return AffineMap{Matrix::Identity(dimension, dimension),
                   Vector::Zero(dimension)};
}

Vector AffineMap::apply(const VectorRef& z) const {
  if (z.size() != linear.cols()) throw DimensionError("affine map input");
  return linear * z + offset;
}

AffineMap simplex_embedding(int reduced_dimension) {
  const int k = reduced_dimension;
  AffineMap map{Matrix::Zero(k + 1, k), Vector::Zero(k + 1)};
  map.linear.topRows(k).setIdentity();
  map.linear.row(k).setConstant(-1.0);
  map.offset(k) = 1.0;
  return map;
}

PayoffFunction PayoffFunction::bilinear(Matrix a, double width_bound) {
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  return bilinear(std::move(a), AffineMap::identity(rows),
                  AffineMap::identity(cols), width_bound);
}

PayoffFunction PayoffFunction::bilinear(Matrix a, AffineMap embed_x,
                                        AffineMap embed_y,
                                        double width_bound) {
  if (embed_x.output_dimension() != a.rows() ||
      embed_y.output_dimension() != a.cols()) {
    throw DimensionError("embedding does not match payoff matrix shape");
  }
  if (!a.allFinite()) throw ConfigError("payoff matrix has non-finite entries");
  if (!(width_bound >= 0.0)) throw ConfigError("width bound must be >= 0");
  PayoffFunction f;
  f.kind_ = PayoffKind::bilinear;
  f.m_ = embed_x.input_dimension();
  f.n_ = embed_y.input_dimension();
  f.width_ = width_bound;
  f.reduced_ = embed_x.linear.transpose() * a * embed_y.linear;
  f.bx_ = embed_x.linear.transpose() * (a * embed_y.offset);
  f.by_ = embed_y.linear.transpose() * (a.transpose() * embed_x.offset);
  f.c0_ = embed_x.offset.dot(a * embed_y.offset);
  f.a_ = std::move(a);
  f.embed_x_ = std::move(embed_x);
  f.embed_y_ = std::move(embed_y);
  f.evaluations_ = std::make_shared<std::atomic<std::uint64_t>>(0);
  return f;
}

PayoffFunction PayoffFunction::general(int m, int n, Evaluator evaluator,
                                       double width_bound) {
  if (!evaluator) throw ConfigError("general payoff needs an evaluator");
  if (!(width_bound >= 0.0)) throw ConfigError("width bound must be >= 0");
  PayoffFunction f;
  f.kind_ = PayoffKind::general;
  f.m_ = m;
  f.n_ = n;
  f.width_ = width_bound;
  f.evaluator_ = std::move(evaluator);
  f.evaluations_ = std::make_shared<std::atomic<std::uint64_t>>(0);
  return f;
}

PayoffFunction PayoffFunction::with_width_bound(double width_bound) const {
  if (!(width_bound >= 0.0)) throw ConfigError("width bound must be >= 0");
  PayoffFunction copy = *this;
  copy.width_ = width_bound;
  return copy;
}

double PayoffFunction::evaluate(const VectorRef& x, const VectorRef& y) const {
  if (x.size() != m_ || y.size() != n_) {
    std::ostringstream msg;
    msg << "payoff expects (" << m_ << ", " << n_ << ")-dimensional inputs, got ("
        << x.size() << ", " << y.size() << ")";
    throw DimensionError(msg.str());
  }
  evaluations_->fetch_add(1, std::memory_order_relaxed);
  if (kind_ == PayoffKind::general) return evaluator_(x, y);

  double value = c0_;
  for (int i = 0; i < m_; ++i) {
    double row = bx_(i);
    for (int j = 0; j < n_; ++j) row += reduced_(i, j) * y(j);
    value += x(i) * row;
  }
  for (int j = 0; j < n_; ++j) value += by_(j) * y(j);
  return value;
}

double width_bound_bilinear(const Matrix& a, double outer_radius_x,
                            double outer_radius_y) {
  if (a.size() == 0) throw ConfigError("empty payoff matrix");
  const double mn = static_cast<double>(a.rows()) * static_cast<double>(a.cols());
  return std::sqrt(mn) * outer_radius_x * outer_radius_y *
         a.cwiseAbs().maxCoeff();
}

ScaledPayoff::ScaledPayoff(PayoffFunction base)
    : base_(std::move(base)), scale_(0.0) {
  if (!(base_.width_bound() > 0.0)) {
    throw ConfigError("constant-zero payoff");
  }
  scale_ = 1.0 / base_.width_bound();
}

double ScaledPayoff::evaluate(const VectorRef& x, const VectorRef& y) const {
  const double value = base_.evaluate(x, y) * scale_;
  if (!(std::abs(value) <= 1.0 + 1e-9)) {
    std::ostringstream msg;
    msg << "|F/rho| = " << std::abs(value) << " > 1 at x = ["
        << x.transpose() << "], y = [" << y.transpose()
        << "]: the width bound " << base_.width_bound()
        << " is below the true sup |F|";
    throw InvariantViolation(msg.str());
  }
  return value;
}

ScaledPayoff scale_payoff(const PayoffFunction& f) { return ScaledPayoff(f); }

}  // namespace saddle
