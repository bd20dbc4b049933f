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

#include "saddle/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace saddle {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

CostCounters snapshot(const ConvexBody& x_body, const ConvexBody& y_body,
                      const PayoffFunction& f, std::int64_t iterations) {
  return CostCounters{x_body.membership_calls(), y_body.membership_calls(),
                      f.evaluations(), iterations};
}

// Re-throws a library error with the iteration it happened in, keeping the
// error type.
template <typename Fn>
auto with_context(int run, std::int64_t t, const char* what, Fn&& fn) {
  auto context = [&](const std::exception& e) {
    std::ostringstream msg;
    msg << e.what() << " (" << what << ", run " << run << ", iteration " << t
        << ")";
    return msg.str();
  };
  try {
    return fn();
  } catch (const SamplerError& e) {
    throw SamplerError(context(e));
  } catch (const GeometryError& e) {
    throw GeometryError(context(e));
  } catch (const InvariantViolation& e) {
    throw InvariantViolation(context(e));
  }
}

// Fixed-size ring of recent member points used by the concavity probe.
class PointPool {
 public:
  explicit PointPool(std::size_t capacity) : capacity_(capacity) {}

  void add(const Vector& p) {
    if (points_.size() < capacity_) {
      points_.push_back(p);
    } else {
      points_[next_] = p;
      next_ = (next_ + 1) % capacity_;
    }
  }

  std::size_t size() const { return points_.size(); }
  const Vector& operator[](std::size_t i) const { return points_[i]; }

 private:
  std::size_t capacity_;
  std::size_t next_ = 0;
  std::vector<Vector> points_;
};

void probe_concavity(const DensitySpec& spec, const PointPool& pool,
                     int pairs, Rng& rng) {
  if (!spec.exponent || pool.size() < 2) return;
  for (int k = 0; k < pairs; ++k) {
    const std::size_t i = rng.next() % pool.size();
    std::size_t j = rng.next() % (pool.size() - 1);
    if (j >= i) ++j;
    const double shortfall = concavity_violation(spec.exponent, pool[i], pool[j]);
    if (shortfall > kConcavitySlack) {
      std::ostringstream msg;
      msg << "exponent of " << spec.label << " fails the concavity probe by "
          << shortfall;
      throw InvariantViolation(msg.str());
    }
  }
}

double grid_sum(const ConvexBody& body, int grid,
                const std::function<double(const Vector&)>& log_weight) {
  const int dim = body.dimension();
  if (dim == 0) return std::exp(log_weight(Vector(0)));
  const double radius = body.outer_radius();
  const double cell = 2.0 * radius / grid;
  std::vector<int> index(dim, 0);
  Vector p(dim);
  double sum = 0.0;
  while (true) {
    for (int i = 0; i < dim; ++i) p(i) = -radius + (index[i] + 0.5) * cell;
    if (body.contains(p)) sum += std::exp(log_weight(p));
    int axis = 0;
    while (axis < dim && ++index[axis] == grid) index[axis++] = 0;
    if (axis == dim) break;
  }
  return sum * std::pow(cell, dim);
}

}  // namespace

IterationDensities iteration_densities(const ConvexBody& x_body,
                                       const ConvexBody& y_body,
                                       const ScaledPayoff& f, double eps_scaled,
                                       std::int64_t t, const Vector& x_t,
                                       const Vector& y_t) {
  IterationDensities d{uniform_density(x_body), uniform_density(y_body)};
  d.minimizer.label = "minimizer density";
  d.maximizer.label = "maximizer density";
  if (t == 0) return d;
  const double c = 0.5 * eps_scaled * static_cast<double>(t);
  const ScaledPayoff* fp = &f;
  d.minimizer.exponent = [fp, c, y_t](const VectorRef& xi) {
    return -c * fp->evaluate(xi, y_t);
  };
  d.maximizer.exponent = [fp, c, x_t](const VectorRef& eta) {
    return c * fp->evaluate(x_t, eta);
  };
  return d;
}

double potential_estimate(const ConvexBody& x_body, const ConvexBody& y_body,
                          const ScaledPayoff& f, double eps_scaled,
                          std::int64_t t, const VectorRef& x_t,
                          const VectorRef& y_t, int grid) {
  if (x_body.dimension() + y_body.dimension() > 4) {
    throw ConfigError("potential estimate restricted to N <= 4");
  }
  if (grid < 32) throw ConfigError("potential estimate needs grid >= 32");
  const double c = 0.5 * eps_scaled * static_cast<double>(t);
  const Vector xt = x_t;
  const Vector yt = y_t;
  const double px = grid_sum(x_body, grid, [&](const Vector& xi) {
    return -c * f.evaluate(xi, yt);
  });
  const double qy = grid_sum(y_body, grid, [&](const Vector& eta) {
    return c * f.evaluate(xt, eta);
  });
  return px * qy;
}

SolveReport solve(const ConvexBody& x_body, const ConvexBody& y_body,
                  const PayoffFunction& f, const SolverConfig& cfg,
                  const Certifier* certifier) {
  const auto start = Clock::now();
  if (!(cfg.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (cfg.max_restarts < 0) throw ConfigError("max_restarts must be >= 0");
  if (cfg.check_every < 1) throw ConfigError("check_every must be >= 1");
  if (x_body.dimension() != f.m() || y_body.dimension() != f.n()) {
    throw DimensionError("payoff dimensions do not match the bodies");
  }

  SolveReport report;
  report.epsilon = cfg.epsilon;
  report.width = f.width_bound();

  const bool exact = certifier != nullptr && is_exact(certifier->method);

  if (report.width == 0.0) {
    // F ≡ 0: every pair is optimal.
    Certificate& cert = report.certificate;
    cert.x_star = x_body.inner_center();
    cert.y_star = y_body.inner_center();
    cert.gap = certifier != nullptr ? certifier->gap(cert.x_star, cert.y_star) : 0.0;
    cert.method = certifier != nullptr ? certifier->method : CertMethod::brute_force;
    cert.certified =
        cert.gap <= cfg.epsilon && (exact || f.kind() == PayoffKind::bilinear);
    cert.runs_used = 0;
    cert.cost = snapshot(x_body, y_body, f, 0);
    report.short_circuited = true;
    report.wall_ms = elapsed_ms(start);
    return report;
  }

  const ScaledPayoff scaled(f);
  const double eps = cfg.epsilon / report.width;
  if (!(eps < 1.0)) {
    std::ostringstream msg;
    msg << "epsilon / width = " << eps << " must be below 1";
    throw ConfigError(msg.str());
  }
  report.epsilon_scaled = eps;
  report.delta = cfg.delta.value_or(eps / 4.0);

  const ProductBody z(x_body, y_body);
  const int N = z.total_dimension;
  report.budget = iteration_bound(N, eps, z);
  if (cfg.t_override) {
    report.budget = override_iterations(report.budget, N, eps, *cfg.t_override);
  }
  const std::int64_t T = report.budget.T;
  report.walk_steps_x = cfg.walk_steps.value_or(default_walk_steps(x_body.dimension()));
  report.walk_steps_y = cfg.walk_steps.value_or(default_walk_steps(y_body.dimension()));
  if (report.walk_steps_x < 1 || report.walk_steps_y < 1) {
    throw ConfigError("walk length must be at least 1");
  }
  const std::int64_t trace_every =
      std::max<std::int64_t>(1, cfg.trace_every.value_or((T + 19) / 20));
  const bool phi_enabled = cfg.phi_grid > 0 && N <= 4;

  Certificate best;
  best.gap = std::numeric_limits<double>::infinity();
  std::int64_t total_iterations = 0;

  for (int run = 0; run <= cfg.max_restarts; ++run) {
    const auto run_id = static_cast<std::uint64_t>(run);
    SolverState state{0, x_body.inner_center(), y_body.inner_center()};
    Vector xi_prev = state.x;
    Vector eta_prev = state.y;
    PointPool pool_x(8);
    PointPool pool_y(8);
    Rng probe_rng(stream_seed(cfg.seed, {run_id, 0xC0FFEEULL}));
    bool stopped_early = false;

    for (std::int64_t t = 0; t < T; ++t) {
      const auto tt = static_cast<std::uint64_t>(t);
      const IterationDensities dens =
          iteration_densities(x_body, y_body, scaled, eps, t, state.x, state.y);

      WalkConfig walk_x{report.walk_steps_x, cfg.chord_tolerance,
                        stream_seed(cfg.seed, {run_id, tt, 0}), std::nullopt};
      WalkConfig walk_y{report.walk_steps_y, cfg.chord_tolerance,
                        stream_seed(cfg.seed, {run_id, tt, 1}), std::nullopt};
      if (cfg.warm_start) {
        walk_x.warm_start = xi_prev;
        walk_y.warm_start = eta_prev;
      }
      const Vector xi = with_context(run, t, "minimizer sample",
                                     [&] { return sample(dens.minimizer, walk_x); });
      const Vector eta = with_context(run, t, "maximizer sample",
                                      [&] { return sample(dens.maximizer, walk_y); });

      if (cfg.concavity_pairs > 0) {
        pool_x.add(xi);
        pool_x.add(state.x);
        pool_y.add(eta);
        pool_y.add(state.y);
        with_context(run, t, "concavity probe", [&] {
          probe_concavity(dens.minimizer, pool_x, cfg.concavity_pairs, probe_rng);
          probe_concavity(dens.maximizer, pool_y, cfg.concavity_pairs, probe_rng);
          return 0;
        });
      }

      const double inv = 1.0 / static_cast<double>(t + 1);
      state.x += inv * (xi - state.x);
      state.y += inv * (eta - state.y);
      state.t = t + 1;
      ++total_iterations;
      if (!x_body.contains(state.x) || !y_body.contains(state.y)) {
        std::ostringstream msg;
        msg << "running average left its body (run " << run << ", iteration "
            << t << ")";
        throw InvariantViolation(msg.str());
      }
      xi_prev = xi;
      eta_prev = eta;

      const bool checkpoint = exact && cfg.early_stop && state.t % cfg.check_every == 0;
      const bool cadence = state.t % trace_every == 0 || state.t == T;
      if (checkpoint || cadence) {
        TraceRecord rec;
        rec.t = total_iterations;
        rec.run = run;
        rec.xi = xi;
        rec.eta = eta;
        if (exact) rec.gap_estimate = certifier->gap(state.x, state.y);
        if (phi_enabled) {
          rec.phi_estimate = potential_estimate(x_body, y_body, scaled, eps,
                                                state.t, state.x, state.y,
                                                cfg.phi_grid);
        }
        rec.membership_calls = x_body.membership_calls() + y_body.membership_calls();
        rec.evaluations = f.evaluations();
        rec.wall_ms = elapsed_ms(start);
        const bool done = checkpoint && *rec.gap_estimate <= cfg.epsilon;
        report.trace.push_back(std::move(rec));
        if (done) {
          stopped_early = true;
          break;
        }
      }
    }

    Certificate cert;
    cert.x_star = state.x;
    cert.y_star = state.y;
    if (certifier != nullptr) {
      cert.gap = certifier->gap(state.x, state.y);
      cert.method = certifier->method;
    } else {
      SampledGapConfig sg;
      sg.budget = cfg.sampled_gap_budget;
      sg.exponent_scale =
          0.5 * eps * static_cast<double>(state.t) / report.width;
      sg.chord_tolerance = cfg.chord_tolerance;
      sg.seed = stream_seed(cfg.seed, {run_id, 0x5A3B1EULL});
      cert.gap = gap_sampled(x_body, y_body, f, state.x, state.y, sg);
      cert.method = CertMethod::sampled_estimate;
    }
    cert.certified = is_exact(cert.method) && cert.gap <= cfg.epsilon;

    RunSummary summary;
    summary.run = run;
    summary.iterations = state.t;
    summary.gap = cert.gap;
    summary.certified = cert.certified;
    summary.stopped_early = stopped_early;
    summary.counters = snapshot(x_body, y_body, f, total_iterations);
    report.runs.push_back(summary);

    if (cert.gap < best.gap) best = std::move(cert);
    if (best.gap <= cfg.epsilon) break;
  }

  best.runs_used = static_cast<int>(report.runs.size());
  best.cost = snapshot(x_body, y_body, f, total_iterations);
  report.certificate = std::move(best);
  report.wall_ms = elapsed_ms(start);
  return report;
}

}  // namespace saddle
