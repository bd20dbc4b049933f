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

#include "saddle/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "saddle/sampler.hpp"

namespace saddle {

namespace {

Vector to_distribution(const VectorRef& p, const char* side) {
  constexpr double kTol = 1e-9;
  if ((p.array() < -kTol).any()) {
    throw Error(std::string("negative probability in ") + side);
  }
  const double mass = p.sum();
  if (std::abs(mass - 1.0) > kTol) {
    throw Error(std::string(side) + " does not sum to 1");
  }
  Vector clipped = p.cwiseMax(0.0);
  return clipped / clipped.sum();
}

}  // namespace

std::string_view to_string(CertMethod method) {
  switch (method) {
    case CertMethod::exact_vertex:
      return "exact_vertex";
    case CertMethod::exact_lp:
      return "exact_lp";
    case CertMethod::brute_force:
      return "brute_force";
    case CertMethod::sampled_estimate:
      return "sampled_estimate";
  }
  return "unknown";
}

std::optional<CertMethod> cert_method_from_string(std::string_view name) {
  for (CertMethod m : {CertMethod::exact_vertex, CertMethod::exact_lp,
                       CertMethod::brute_force, CertMethod::sampled_estimate}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

double gap_matrix_game(const Matrix& a, const VectorRef& p,
                       const VectorRef& q) {
  if (p.size() != a.rows() || q.size() != a.cols()) {
    throw DimensionError("strategy sizes do not match the payoff matrix");
  }
  const Vector pp = to_distribution(p, "row strategy");
  const Vector qq = to_distribution(q, "column strategy");
  const double best_column = (pp.transpose() * a).maxCoeff();
  const double best_row = (a * qq).minCoeff();
  return best_column - best_row;
}

double gap_polytope_bilinear(const Matrix& a,
                             const std::vector<Vector>& x_vertices,
                             const std::vector<Vector>& y_vertices,
                             const VectorRef& x, const VectorRef& y) {
  if (x_vertices.empty() || y_vertices.empty()) {
    throw Error("empty vertex list");
  }
  if (x.size() != a.rows() || y.size() != a.cols()) {
    throw DimensionError("point sizes do not match the payoff matrix");
  }
  const Vector xa = a.transpose() * x;
  const Vector ay = a * y;
  double sup_y = -std::numeric_limits<double>::infinity();
  for (const Vector& v : y_vertices) sup_y = std::max(sup_y, xa.dot(v));
  double inf_x = std::numeric_limits<double>::infinity();
  for (const Vector& u : x_vertices) inf_x = std::min(inf_x, u.dot(ay));
  return sup_y - inf_x;
}

double gap_sampled(const ConvexBody& x_body, const ConvexBody& y_body,
                   const PayoffFunction& f, const VectorRef& x,
                   const VectorRef& y, const SampledGapConfig& cfg) {
  if (cfg.budget < 1) throw ConfigError("sampled gap budget must be >= 1");
  const Vector xs = x;
  const Vector ys = y;
  const double scale = cfg.exponent_scale;

  DensitySpec responder_y{
      y_body,
      [&f, xs, scale](const VectorRef& eta) { return scale * f.evaluate(xs, eta); },
      "sampled-gap maximizer"};
  DensitySpec responder_x{
      x_body,
      [&f, ys, scale](const VectorRef& xi) { return -scale * f.evaluate(xi, ys); },
      "sampled-gap minimizer"};
  if (scale == 0.0) {
    responder_x.exponent = nullptr;
    responder_y.exponent = nullptr;
  }

  const int steps_x = cfg.steps_per_sample > 0
                          ? cfg.steps_per_sample
                          : default_walk_steps(x_body.dimension());
  const int steps_y = cfg.steps_per_sample > 0
                          ? cfg.steps_per_sample
                          : default_walk_steps(y_body.dimension());
  HitAndRunWalker walk_y(responder_y, ys, stream_seed(cfg.seed, {1}),
                         cfg.chord_tolerance);
  HitAndRunWalker walk_x(responder_x, xs, stream_seed(cfg.seed, {0}),
                         cfg.chord_tolerance);

  const double baseline = f.evaluate(xs, ys);
  double sup_y = baseline;
  double inf_x = baseline;
  for (int i = 0; i < cfg.budget; ++i) {
    sup_y = std::max(sup_y, f.evaluate(xs, walk_y.advance(steps_y)));
    inf_x = std::min(inf_x, f.evaluate(walk_x.advance(steps_x), ys));
  }
  return sup_y - inf_x;
}

}  // namespace saddle
