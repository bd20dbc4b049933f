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

#include "saddle/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace saddle {

namespace {

constexpr double kInvGolden = 0.6180339887498949;
constexpr double kModeBracket = 1e-3;

struct Knot {
  double s;
  double g;
};

// Exp-linear envelope piece on [u, v]: log-density lu at u, lv at v.
struct Piece {
  double u;
  double v;
  double lu;
  double lv;
  double log_mass;
};

double checked(double value) {
  if (std::isnan(value)) throw SamplerError("exponent returned NaN");
  if (!std::isfinite(value)) throw SamplerError("exponent is not finite");
  return value;
}

double piece_log_mass(double lu, double lv, double width) {
  const double top = std::max(lu, lv);
  const double z = std::abs(lv - lu);
  if (z < 1e-12) return top + std::log(width);
  return top + std::log(width) + std::log(-std::expm1(-z)) - std::log(z);
}

// Offset in [0, width] from the high end of a piece whose log-density drops
// by z across it.
double draw_offset(double z, double width, double uniform) {
  if (z < 1e-12) return uniform * width;
  const double x = -width * std::log1p(uniform * std::expm1(-z)) / z;
  return std::clamp(x, 0.0, width);
}

double grid_fallback(const std::function<double(double)>& g, double lo,
                     double hi, Rng& rng) {
  const double cell = (hi - lo) / kFallbackGridPoints;
  std::vector<double> logw(kFallbackGridPoints);
  double top = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < kFallbackGridPoints; ++i) {
    logw[i] = checked(g(lo + (i + 0.5) * cell));
    top = std::max(top, logw[i]);
  }
  std::vector<double> cumulative(kFallbackGridPoints);
  double total = 0.0;
  for (int i = 0; i < kFallbackGridPoints; ++i) {
    total += std::exp(logw[i] - top);
    cumulative[i] = total;
  }
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw SamplerError("chord sampling stalled");
  }
  const double target = rng.uniform() * total;
  const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), target);
  const auto index = std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                              kFallbackGridPoints - 1);
  return std::clamp(lo + (static_cast<double>(index) + rng.uniform()) * cell,
                    lo, hi);
}

}  // namespace

DensitySpec uniform_density(const ConvexBody& body) {
  return DensitySpec{body, nullptr, "uniform"};
}

int default_walk_steps(int dimension) { return std::max(1, 200 * dimension); }

double sample_1d_logconcave(const std::function<double(double)>& g_line,
                            double lo, double hi, Rng& rng,
                            LineSamplerStats* stats) {
  if (!(lo < hi)) throw SamplerError("empty sampling interval");

  std::vector<Knot> knots;
  knots.reserve(24);
  auto probe = [&](double s) {
    const double g = checked(g_line(s));
    knots.push_back({s, g});
    return g;
  };

  probe(lo);
  probe(hi);
  double a = lo;
  double b = hi;
  double c = b - kInvGolden * (b - a);
  double d = a + kInvGolden * (b - a);
  double gc = probe(c);
  double gd = probe(d);
  while (b - a > kModeBracket * (hi - lo)) {
    if (gc >= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - kInvGolden * (b - a);
      gc = probe(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + kInvGolden * (b - a);
      gd = probe(d);
    }
  }

  std::sort(knots.begin(), knots.end(),
            [](const Knot& x, const Knot& y) { return x.s < y.s; });
  const double min_gap = 1e-13 * (hi - lo);
  std::vector<Knot> unique;
  unique.reserve(knots.size());
  for (const Knot& k : knots) {
    if (unique.empty() || k.s - unique.back().s > min_gap) unique.push_back(k);
  }
  if (unique.size() < 3) {
    throw SamplerError("interval too short to bracket the mode");
  }

  // Secant through knots i and i+1, evaluated at s.
  auto secant = [&](std::size_t i, double s) {
    const Knot& p = unique[i];
    const Knot& q = unique[i + 1];
    return p.g + (q.g - p.g) * (s - p.s) / (q.s - p.s);
  };

  const std::size_t n = unique.size();
  std::vector<Piece> pieces;
  pieces.reserve(n - 1);
  double top_mass = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double u = unique[i].s;
    const double v = unique[i + 1].s;
    Piece best{u, v, 0.0, 0.0, std::numeric_limits<double>::infinity()};
    if (i >= 1) {
      Piece left{u, v, secant(i - 1, u), secant(i - 1, v), 0.0};
      left.log_mass = piece_log_mass(left.lu, left.lv, v - u);
      best = left;
    }
    if (i + 2 < n) {
      Piece right{u, v, secant(i + 1, u), secant(i + 1, v), 0.0};
      right.log_mass = piece_log_mass(right.lu, right.lv, v - u);
      if (right.log_mass < best.log_mass) best = right;
    }
    top_mass = std::max(top_mass, best.log_mass);
    pieces.push_back(best);
  }

  std::vector<double> cumulative(pieces.size());
  double total = 0.0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    total += std::exp(pieces[i].log_mass - top_mass);
    cumulative[i] = total;
  }

  if (stats != nullptr) ++stats->draws;
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    if (stats != nullptr) ++stats->proposals;
    const double target = rng.uniform() * total;
    const auto it =
        std::lower_bound(cumulative.begin(), cumulative.end(), target);
    const Piece& piece =
        pieces[std::min<std::size_t>(it - cumulative.begin(), pieces.size() - 1)];
    const double width = piece.v - piece.u;
    const double offset =
        draw_offset(std::abs(piece.lv - piece.lu), width, rng.uniform());
    const double s =
        piece.lu >= piece.lv ? piece.u + offset : piece.v - offset;
    const double envelope =
        piece.lu + (piece.lv - piece.lu) * (s - piece.u) / width;
    const double g = checked(g_line(s));
    const double excess = g - envelope;
    if (excess > 1e-9 * std::max(1.0, std::abs(envelope)) && stats != nullptr) {
      ++stats->envelope_violations;
    }
    if (excess >= 0.0 || std::log(rng.uniform()) <= excess) return s;
  }
  if (stats != nullptr) ++stats->grid_fallbacks;
  return grid_fallback(g_line, lo, hi, rng);
}

HitAndRunWalker::HitAndRunWalker(DensitySpec spec, Vector start,
                                 std::uint64_t seed, double chord_tolerance)
    : spec_(std::move(spec)),
      position_(std::move(start)),
      rng_(seed),
      tol_(chord_tolerance),
      direction_(spec_.body.dimension()),
      scratch_(spec_.body.dimension()),
      probe_(spec_.body.dimension()) {
  if (position_.size() != spec_.body.dimension()) {
    throw DimensionError("walk start has the wrong dimension");
  }
}

const Vector& HitAndRunWalker::advance(int steps) {
  const int dim = spec_.body.dimension();
  if (dim == 0) return position_;
  for (int step = 0; step < steps; ++step) {
    double norm = 0.0;
    do {
      for (int i = 0; i < dim; ++i) direction_(i) = rng_.normal();
      norm = direction_.norm();
    } while (norm == 0.0);
    direction_ /= norm;

    const Chord chord =
        find_chord(spec_.body, position_, direction_, tol_, scratch_);
    if (!(chord.hi > chord.lo)) continue;

    double s = 0.0;
    if (!spec_.exponent) {
      s = chord.lo + rng_.uniform() * (chord.hi - chord.lo);
    } else {
      auto line = [this](double t) {
        probe_.noalias() = position_ + t * direction_;
        return spec_.exponent(probe_);
      };
      s = sample_1d_logconcave(line, chord.lo, chord.hi, rng_, &stats_);
    }
    position_ += s * direction_;
  }
  if (!spec_.body.contains(position_)) {
    throw InvariantViolation("hit-and-run left body '" +
                             spec_.body.label() + "'");
  }
  return position_;
}

Vector hit_and_run_step(const DensitySpec& spec, const VectorRef& current,
                        Rng& rng, double chord_tolerance,
                        LineSamplerStats* stats) {
  HitAndRunWalker walker(spec, current, rng.next(), chord_tolerance);
  Vector next = walker.advance(1);
  if (stats != nullptr) *stats += walker.stats();
  return next;
}

Vector sample(const DensitySpec& spec, const WalkConfig& cfg,
              LineSamplerStats* stats) {
  if (cfg.steps_per_sample < 1) {
    throw ConfigError("steps_per_sample must be at least 1");
  }
  Vector start = cfg.warm_start ? *cfg.warm_start : spec.body.inner_center();
  if (!spec.body.contains(start)) {
    throw GeometryError("warm start outside body '" + spec.body.label() + "'");
  }
  HitAndRunWalker walker(spec, std::move(start), cfg.rng_seed,
                         cfg.chord_tolerance);
  Vector result = walker.advance(cfg.steps_per_sample);
  if (stats != nullptr) *stats += walker.stats();
  return result;
}

double concavity_violation(const DensitySpec::Exponent& g, const VectorRef& u,
                           const VectorRef& v) {
  if (!g) return 0.0;
  const double gu = g(u);
  const double gv = g(v);
  double worst = -std::numeric_limits<double>::infinity();
  for (double lambda : {0.25, 0.5, 0.75}) {
    const Vector mid = lambda * u + (1.0 - lambda) * v;
    worst = std::max(worst, lambda * gu + (1.0 - lambda) * gv - g(mid));
  }
  return worst;
}

}  // namespace saddle
