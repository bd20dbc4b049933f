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

#include "saddle/report.hpp"

#include <sstream>

namespace saddle {
namespace {

using nlohmann::json;

json vec(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json counters(const CostCounters& c) {
  return {{"membership_calls_x", c.membership_calls_x},
          {"membership_calls_y", c.membership_calls_y},
          {"payoff_evaluations", c.payoff_evaluations},
          {"iterations", c.iterations}};
}

template <typename T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

}  // namespace

json result_record(const Instance& instance, const SolverConfig& cfg,
                   const SolveReport& report, const RecordOptions& opts) {
  const Certificate& c = report.certificate;
  json rec;
  rec["instance"] = {{"path", opts.instance_path},
                     {"kind", instance.kind},
                     {"dimension_x", instance.x_body.dimension()},
                     {"dimension_y", instance.y_body.dimension()}};
  rec["certificate"] = {{"x_star", vec(instance.embed_x.apply(c.x_star))},
                        {"y_star", vec(instance.embed_y.apply(c.y_star))},
                        {"x_star_body", vec(c.x_star)},
                        {"y_star_body", vec(c.y_star)},
                        {"gap", c.gap},
                        {"method", std::string(to_string(c.method))},
                        {"certified", c.certified},
                        {"runs_used", c.runs_used}};
  rec["config"] = {{"epsilon", report.epsilon},
                   {"epsilon_scaled", report.epsilon_scaled},
                   {"delta", report.delta},
                   {"width", report.width},
                   {"seed", cfg.seed},
                   {"seed_generated", opts.seed_generated},
                   {"walk_steps_x", report.walk_steps_x},
                   {"walk_steps_y", report.walk_steps_y},
                   {"chord_tolerance", cfg.chord_tolerance},
                   {"t_override", opt(cfg.t_override)},
                   {"max_restarts", cfg.max_restarts},
                   {"early_stop", cfg.early_stop},
                   {"check_every", cfg.check_every},
                   {"warm_start", cfg.warm_start}};
  const IterationBudget& b = report.budget;
  rec["budget"] = {{"alpha", b.alpha},
                   {"T", b.T},
                   {"case", std::string(to_string(b.case_tag))},
                   {"log_vol_lower", b.log_vol_lower},
                   {"log_vol_upper", b.log_vol_upper},
                   {"predicates_hold", b.predicates_hold},
                   {"overridden", b.overridden}};
  rec["counters"] = counters(c.cost);
  if (opts.include_timing) rec["counters"]["wall_ms"] = report.wall_ms;
  json runs = json::array();
  for (const RunSummary& r : report.runs) {
    runs.push_back({{"run", r.run},
                    {"iterations", r.iterations},
                    {"gap", r.gap},
                    {"certified", r.certified},
                    {"stopped_early", r.stopped_early},
                    {"counters", counters(r.counters)}});
  }
  rec["runs"] = std::move(runs);
  rec["short_circuited"] = report.short_circuited;
  rec["status"] = c.certified ? "certified" : "uncertified";
  return rec;
}

std::string trace_csv(const SolveReport& report) {
  std::ostringstream out;
  out << "t,gap_estimate,phi_estimate,membership_calls,evals,wall_ms\n";
  for (const TraceRecord& r : report.trace) {
    out << r.t << ',';
    if (r.gap_estimate) out << fmt(*r.gap_estimate);
    out << ',';
    if (r.phi_estimate) out << fmt(*r.phi_estimate);
    out << ',' << r.membership_calls << ',' << r.evaluations << ',' << fmt(r.wall_ms) << '\n';
  }
  return out.str();
}

}  // namespace saddle
