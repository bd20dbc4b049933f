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
#include <string>
#include <vector>

#include "saddle/types.hpp"

namespace saddle {

/// A bounded, full-dimensional convex body known only through a membership
/// predicate, together with a ball sandwich
///   B(inner_center, inner_radius) ⊆ body ⊆ B(0, outer_radius).
///
/// Bodies are closed sets. Copies share the membership-call counter, so a
/// copy handed to a worker still reports into the same total.
class ConvexBody {
 public:
  using Membership = std::function<bool(const VectorRef&)>;

  ConvexBody(int dimension, Membership membership, Vector inner_center,
             double inner_radius, double outer_radius, std::string label = {});

  int dimension() const { return dimension_; }
  const Vector& inner_center() const { return inner_center_; }
  double inner_radius() const { return inner_radius_; }
  double outer_radius() const { return outer_radius_; }
  const std::string& label() const { return label_; }

  /// Membership test. Counts one oracle call. Throws DimensionError when the
  /// point has the wrong length.
  bool contains(const VectorRef& p) const;

  std::uint64_t membership_calls() const {
    return calls_->load(std::memory_order_relaxed);
  }

 private:
  int dimension_;
  Membership membership_;
  Vector inner_center_;
  double inner_radius_;
  double outer_radius_;
  std::string label_;
  std::shared_ptr<std::atomic<std::uint64_t>> calls_;
};

/// Z = X × Y with the combined radius R = max{R_X, R_Y, 1/r_X, 1/r_Y}.
struct ProductBody {
  ProductBody(ConvexBody x, ConvexBody y);

  ConvexBody left;
  ConvexBody right;
  int total_dimension;
  double r_max;
};

/// Intersection of the line origin + s·direction with a body. Every s in
/// [lo, hi] is a member; lo - tol·R and hi + tol·R are not.
struct Chord {
  Vector origin;
  Vector direction;
  double lo = 0.0;
  double hi = 0.0;
};

inline constexpr double kDefaultChordTolerance = 1e-9;

/// Bisection between origin and origin ± 2R·direction, stopping when the
/// bracket is narrower than tol·R. Throws GeometryError("origin outside")
/// or GeometryError("unbounded chord").
Chord find_chord(const ConvexBody& body, const VectorRef& origin,
                 const VectorRef& direction,
                 double tol = kDefaultChordTolerance);

/// Same as above, with a caller-owned buffer for the probe points.
Chord find_chord(const ConvexBody& body, const VectorRef& origin,
                 const VectorRef& direction, double tol, Vector& scratch);

/// Exact number of membership calls one successful find_chord performs.
int chord_membership_calls(double tol = kDefaultChordTolerance);

/// a·p ≤ b.
struct Halfspace {
  Vector a;
  double b = 0.0;
};

/// A finite intersection of closed halfspaces, usable as a bare predicate.
/// No sandwich is attached, so lower-dimensional sets (e.g. equalities
/// written as two inequalities) are representable here but not as bodies.
class HalfspaceSet {
 public:
  HalfspaceSet(int dimension, std::vector<Halfspace> constraints);

  int dimension() const { return dimension_; }
  const std::vector<Halfspace>& constraints() const { return constraints_; }

  bool contains(const VectorRef& p) const;

  /// min over constraints of (b - a·p) / ‖a‖₂; the radius of the largest
  /// ball around p that the constraints admit. Negative outside.
  double slack_radius(const VectorRef& p) const;

 private:
  int dimension_;
  std::vector<Halfspace> constraints_;
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> a_;
  Vector b_;
};

/// Body from halfspaces. The inner ball is validated against every
/// constraint; a violation throws GeometryError naming the constraint index.
ConvexBody make_halfspace_body(std::vector<Halfspace> constraints,
                               Vector inner_center, double inner_radius,
                               double outer_radius, std::string label = {});

ConvexBody make_box_body(const Vector& lower, const Vector& upper,
                         std::string label = "box");

/// Euclidean ball centred at the origin.
ConvexBody make_ball_body(int dimension, double radius,
                          std::string label = "ball");

/// {x ≥ 0, Σx ≤ 1} in R^dimension (the probability simplex with the last
/// coordinate eliminated).
ConvexBody make_simplex_body(int dimension, std::string label = "simplex");

}  // namespace saddle
