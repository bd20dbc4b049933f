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

#include <optional>
#include <string>

#include <json.hpp>

#include "saddle/instances.hpp"
#include "saddle/solver.hpp"

namespace saddle {

struct RecordOptions {
  std::string instance_path;
  bool seed_generated = false;
  /// Wall-clock fields make records differ run to run; off by default.
  bool include_timing = false;
};

/// Machine-readable summary of one solve: certificate in original
/// coordinates, configuration echo, budget, cost counters, per-run rows.
nlohmann::json result_record(const Instance& instance, const SolverConfig& cfg,
                             const SolveReport& report, const RecordOptions& opts);

/// Trace rows as CSV with header
///   t,gap_estimate,phi_estimate,membership_calls,evals,wall_ms
/// Fields not computed for a row are left empty.
std::string trace_csv(const SolveReport& report);

}  // namespace saddle
