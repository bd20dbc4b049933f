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

#include "saddle/convex_body.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace saddle {

ConvexBody::ConvexBody(int dimension, Membership membership,
                       Vector inner_center, double inner_radius,
                       double outer_radius, std::string label)
    : dimension_(dimension),
      membership_(std::move(membership)),
      inner_center_(std::move(inner_center)),
      inner_radius_(inner_radius),
      outer_radius_(outer_radius),
      label_(std::move(label)),
      calls_(std::make_shared<std::atomic<std::uint64_t>>(0)) {
  if (dimension_ < 0) throw GeometryError("negative body dimension");
  if (inner_center_.size() != dimension_) {
    throw DimensionError("inner center has dimension " +
                         std::to_string(inner_center_.size()) + ", body has " +
                         std::to_string(dimension_));
  }
  if (!(inner_radius_ > 0.0) || !(outer_radius_ > 0.0)) {
    throw GeometryError("sandwich radii must be strictly positive");
  }
  if (inner_center_.norm() + inner_radius_ > outer_radius_ * (1.0 + 1e-12)) {
    throw GeometryError("inner ball is not contained in the outer ball");
  }
  if (!membership_(inner_center_)) {
    throw GeometryError("inner center is not a member of body '" + label_ +
                        "'");
  }
}

bool ConvexBody::contains(const VectorRef& p) const {
  if (p.size() != dimension_) {
    throw DimensionError("point has dimension " + std::to_string(p.size()) +
                         ", body '" + label_ + "' has " +
                         std::to_string(dimension_));
  }
  calls_->fetch_add(1, std::memory_order_relaxed);
  return membership_(p);
}

ProductBody::ProductBody(ConvexBody x, ConvexBody y)
    : left(std::move(x)),
      right(std::move(y)),
      total_dimension(left.dimension() + right.dimension()),
      r_max(std::max({left.outer_radius(), right.outer_radius(),
                      1.0 / left.inner_radius(), 1.0 / right.inner_radius()})) {}

int chord_membership_calls(double tol) {
  // One call for the origin, then per endpoint one call at distance 2R and
  // one per halving of the initial bracket of width 2R down to tol·R.
  int halvings = 0;
  for (double width = 2.0; width > tol; width *= 0.5) ++halvings;
  return 1 + 2 * (1 + halvings);
}

namespace {

double bisect_endpoint(const ConvexBody& body, const VectorRef& origin,
                       const VectorRef& direction, double sign, double tol,
                       Vector& scratch) {
  const double radius = body.outer_radius();
  double inside = 0.0;
  double outside = sign * 2.0 * radius;
  scratch.noalias() = origin + outside * direction;
  if (body.contains(scratch)) {
    throw GeometryError("unbounded chord in body '" + body.label() + "'");
  }
  // Compare against the unscaled width so the number of halvings is exact.
  double width = 2.0;
  while (width > tol) {
    const double mid = 0.5 * (inside + outside);
    scratch.noalias() = origin + mid * direction;
    if (body.contains(scratch)) {
      inside = mid;
    } else {
      outside = mid;
    }
    width *= 0.5;
  }
  return inside;
}

}  // namespace

Chord find_chord(const ConvexBody& body, const VectorRef& origin,
                 const VectorRef& direction, double tol, Vector& scratch) {
  if (origin.size() != body.dimension() ||
      direction.size() != body.dimension()) {
    throw DimensionError("chord origin/direction dimension mismatch");
  }
  if (!(tol > 0.0)) throw GeometryError("chord tolerance must be positive");
  if (std::abs(direction.norm() - 1.0) > 1e-12) {
    throw GeometryError("chord direction is not a unit vector");
  }
  if (!body.contains(origin)) {
    throw GeometryError("origin outside body '" + body.label() + "'");
  }
  scratch.resize(body.dimension());
  Chord chord;
  chord.origin = origin;
  chord.direction = direction;
  chord.hi = bisect_endpoint(body, origin, direction, +1.0, tol, scratch);
  chord.lo = bisect_endpoint(body, origin, direction, -1.0, tol, scratch);
  return chord;
}

Chord find_chord(const ConvexBody& body, const VectorRef& origin,
                 const VectorRef& direction, double tol) {
  Vector scratch(body.dimension());
  return find_chord(body, origin, direction, tol, scratch);
}

HalfspaceSet::HalfspaceSet(int dimension, std::vector<Halfspace> constraints)
    : dimension_(dimension), constraints_(std::move(constraints)) {
  a_.resize(static_cast<Eigen::Index>(constraints_.size()), dimension_);
  b_.resize(static_cast<Eigen::Index>(constraints_.size()));
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    const auto& c = constraints_[i];
    if (c.a.size() != dimension_) {
      throw DimensionError("halfspace " + std::to_string(i) + " has " +
                           std::to_string(c.a.size()) +
                           " coefficients, expected " +
                           std::to_string(dimension_));
    }
    a_.row(static_cast<Eigen::Index>(i)) = c.a.transpose();
    b_(static_cast<Eigen::Index>(i)) = c.b;
  }
}

bool HalfspaceSet::contains(const VectorRef& p) const {
  if (p.size() != dimension_) throw DimensionError("halfspace set dimension");
  const Eigen::Index rows = a_.rows();
  const double* row = a_.data();
  const double* x = p.data();
  for (Eigen::Index i = 0; i < rows; ++i, row += dimension_) {
    double dot = 0.0;
    for (Eigen::Index j = 0; j < dimension_; ++j) dot += row[j] * x[j];
    if (dot > b_(i)) return false;
  }
  return true;
}

double HalfspaceSet::slack_radius(const VectorRef& p) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : constraints_) {
    const double norm = c.a.norm();
    if (norm == 0.0) {
      if (c.b < 0.0) return -std::numeric_limits<double>::infinity();
      continue;
    }
    best = std::min(best, (c.b - c.a.dot(p)) / norm);
  }
  return best;
}

ConvexBody make_halfspace_body(std::vector<Halfspace> constraints,
                               Vector inner_center, double inner_radius,
                               double outer_radius, std::string label) {
  const int dim = static_cast<int>(inner_center.size());
  auto set = std::make_shared<const HalfspaceSet>(dim, std::move(constraints));
  for (std::size_t i = 0; i < set->constraints().size(); ++i) {
    const auto& c = set->constraints()[i];
    const double reach = c.a.dot(inner_center) + c.a.norm() * inner_radius;
    if (reach > c.b + 1e-12 * std::max(1.0, std::abs(c.b))) {
      std::ostringstream msg;
      msg << "inner ball violates constraint " << i << " of body '" << label
          << "': a·c + ‖a‖r = " << reach << " > b = " << c.b;
      throw GeometryError(msg.str());
    }
  }
  return ConvexBody(
      dim, [set](const VectorRef& p) { return set->contains(p); },
      std::move(inner_center), inner_radius, outer_radius, std::move(label));
}

ConvexBody make_box_body(const Vector& lower, const Vector& upper,
                         std::string label) {
  if (lower.size() != upper.size()) throw DimensionError("box bounds");
  if (!((upper - lower).array() > 0.0).all()) {
    throw GeometryError("box must have positive width in every coordinate");
  }
  const Vector center = 0.5 * (lower + upper);
  const double inner = 0.5 * (upper - lower).minCoeff();
  const double outer = lower.cwiseAbs().cwiseMax(upper.cwiseAbs()).norm();
  auto lo = std::make_shared<const Vector>(lower);
  auto hi = std::make_shared<const Vector>(upper);
  return ConvexBody(
      static_cast<int>(lower.size()),
      [lo, hi](const VectorRef& p) {
        for (Eigen::Index i = 0; i < p.size(); ++i) {
          if (p(i) < (*lo)(i) || p(i) > (*hi)(i)) return false;
        }
        return true;
      },
      center, inner, outer, std::move(label));
}

ConvexBody make_ball_body(int dimension, double radius, std::string label) {
  const double r2 = radius * radius;
  return ConvexBody(
      dimension, [r2](const VectorRef& p) { return p.squaredNorm() <= r2; },
      Vector::Zero(dimension), radius, radius, std::move(label));
}

ConvexBody make_simplex_body(int dimension, std::string label) {
  if (dimension == 0) {
    return ConvexBody(
        0, [](const VectorRef&) { return true; }, Vector(0), 1.0, 1.0,
        std::move(label));
  }
  const double d = dimension;
  Vector center = Vector::Constant(dimension, 1.0 / (d + 1.0));
  // The facet Σx = 1 is the closest one: (1 - d/(d+1)) / √d.
  const double inner = 1.0 / ((d + 1.0) * std::sqrt(d));
  return ConvexBody(
      dimension,
      [](const VectorRef& p) {
        double sum = 0.0;
        for (Eigen::Index i = 0; i < p.size(); ++i) {
          if (p(i) < 0.0) return false;
          sum += p(i);
        }
        return sum <= 1.0;
      },
      std::move(center), inner, 1.0, std::move(label));
}

}  // namespace saddle
