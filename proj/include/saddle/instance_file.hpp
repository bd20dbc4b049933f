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
#include <string_view>
#include <variant>
#include <vector>

#include "saddle/instances.hpp"

namespace saddle {

struct MatrixGameSpec {
  Matrix matrix;
};

struct PolytopeBilinearSpec {
  Matrix matrix;
  std::vector<Halfspace> x_halfspaces;
  std::vector<Halfspace> y_halfspaces;
};

using InstancePayload = std::variant<MatrixGameSpec, PolytopeBilinearSpec,
                                     MatchingInstance, SubmodularCoverInstance>;

/// Parsed instance document.
///
///   {"kind": "matrix_game", "matrix": [[1, -1], [-1, 1]]}
///
/// Optional top-level keys: "sandwich" {"x": {...}, "y": {...}} with any of
/// inner_center, inner_radius, outer_radius; "certifier" "auto" or
/// "sampled" (the latter forces the sampled gap estimate).
struct InstanceFile {
  InstancePayload payload;
  std::optional<SandwichOverride> sandwich_x;
  std::optional<SandwichOverride> sandwich_y;
  std::string certifier = "auto";

  std::string kind() const;
};

InstanceFile parse_instance(std::string_view text);
InstanceFile load_instance_file(const std::string& path);

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string serialize_instance(const InstanceFile& file);

Instance build_instance(const InstanceFile& file);

}  // namespace saddle
