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

#include "saddle/instance_file.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace saddle {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError("field '" + path + "': " + what);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

Vector vector_of(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = number(j[i], path + "[" + std::to_string(i) + "]");
  }
  return v;
}

Matrix matrix_of(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of rows");
  std::size_t cols = 0;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string row = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].empty()) fail(row, "row must be a nonempty array");
    if (r == 0) cols = j[r].size();
    if (j[r].size() != cols) {
      fail(row, "row " + std::to_string(r) + " has " + std::to_string(j[r].size()) +
                    " entries, expected " + std::to_string(cols));
    }
  }
  Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          number(j[r][c], path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
  }
  return m;
}

std::vector<Halfspace> halfspaces_of(const json& j, const std::string& path, int dim) {
  if (!j.is_array()) fail(path, "expected an array of {a, b}");
  std::vector<Halfspace> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    Halfspace h{vector_of(require(j[i], "a", p), p + ".a"), number(require(j[i], "b", p), p + ".b")};
    if (h.a.size() != dim) {
      fail(p + ".a", "has " + std::to_string(h.a.size()) + " entries, expected " +
                         std::to_string(dim));
    }
    out.push_back(std::move(h));
  }
  return out;
}

SandwichOverride sandwich_of(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  SandwichOverride s;
  for (const auto& [key, value] : j.items()) {
    const std::string p = path + "." + key;
    if (key == "inner_center") s.inner_center = vector_of(value, p);
    else if (key == "inner_radius") s.inner_radius = number(value, p);
    else if (key == "outer_radius") s.outer_radius = number(value, p);
    else fail(p, "unknown key");
  }
  return s;
}

std::vector<std::string> names_of(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of names");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(text(j[i], path + "[" + std::to_string(i) + "]"));
    if (std::count(out.begin(), out.end(), out.back()) > 1) {
      fail(path + "[" + std::to_string(i) + "]", "duplicate name '" + out.back() + "'");
    }
  }
  return out;
}

MatchingInstance matching_of(const json& doc) {
  MatchingInstance inst;
  inst.agents = names_of(require(doc, "agents", ""), "agents");
  inst.posts = names_of(require(doc, "posts", ""), "posts");
  const json& edges = require(doc, "edges", "");
  if (!edges.is_array()) fail("edges", "expected an array");
  auto index_of = [](const std::vector<std::string>& names, const std::string& name,
                     const std::string& path) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) fail(path, "unknown name '" + name + "'");
    return static_cast<int>(it - names.begin());
  };
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string p = "edges[" + std::to_string(i) + "]";
    MatchingEdge e;
    e.agent = index_of(inst.agents, text(require(edges[i], "agent", p), p + ".agent"), p + ".agent");
    e.post = index_of(inst.posts, text(require(edges[i], "post", p), p + ".post"), p + ".post");
    e.rank = integer(require(edges[i], "rank", p), p + ".rank");
    inst.edges.push_back(e);
  }
  return inst;
}

SubmodularCoverInstance cover_of(const json& doc) {
  SubmodularCoverInstance inst;
  inst.ground_set_size = integer(require(doc, "ground_set_size", ""), "ground_set_size");
  const json& sets = require(doc, "sets", "");
  if (!sets.is_array()) fail("sets", "expected an array of index arrays");
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const std::string p = "sets[" + std::to_string(i) + "]";
    if (!sets[i].is_array()) fail(p, "expected an array of element indices");
    std::vector<int> s;
    for (std::size_t k = 0; k < sets[i].size(); ++k) {
      s.push_back(integer(sets[i][k], p + "[" + std::to_string(k) + "]"));
    }
    inst.sets.push_back(std::move(s));
  }
  const json& f = require(doc, "f", "");
  if (f.is_string()) {
    if (f.get<std::string>() != "coverage") fail("f", "expected \"coverage\" or a table");
    inst.f_kind = "coverage";
  } else {
    const Vector t = vector_of(f, "f");
    inst.f_kind = "table";
    inst.f_table.assign(t.data(), t.data() + t.size());
    const std::size_t want = std::size_t{1} << std::min<std::size_t>(sets.size(), 30);
    if (inst.f_table.size() != want) {
      fail("f", "table has " + std::to_string(inst.f_table.size()) + " entries, expected " +
                    std::to_string(want) + " (one per subset, indexed by bitmask)");
    }
  }
  if (doc.contains("n_limit")) inst.n_limit = integer(doc["n_limit"], "n_limit");
  return inst;
}

json to_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(to_json(Vector(m.row(r).transpose())));
  return rows;
}

json to_json(const std::vector<Halfspace>& hs) {
  json a = json::array();
  for (const Halfspace& h : hs) a.push_back({{"a", to_json(h.a)}, {"b", h.b}});
  return a;
}

json to_json(const SandwichOverride& s) {
  json o = json::object();
  if (s.inner_center) o["inner_center"] = to_json(*s.inner_center);
  if (s.inner_radius) o["inner_radius"] = *s.inner_radius;
  if (s.outer_radius) o["outer_radius"] = *s.outer_radius;
  return o;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

std::string InstanceFile::kind() const {
  switch (payload.index()) {
    case 0: return "matrix_game";
    case 1: return "polytope_bilinear";
    case 2: return "popular_matching";
    default: return "submodular_cover";
  }
}

InstanceFile parse_instance(std::string_view text_in) {
  json doc;
  try {
    doc = json::parse(text_in.begin(), text_in.end());
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    throw ParseError("line " + std::to_string(line_of(text_in, byte)) + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError("line 1: instance must be an object");

  static const std::map<std::string, std::vector<std::string>> allowed = {
      {"matrix_game", {"matrix"}},
      {"polytope_bilinear", {"matrix", "x_halfspaces", "y_halfspaces"}},
      {"popular_matching", {"agents", "posts", "edges"}},
      {"submodular_cover", {"ground_set_size", "sets", "f", "n_limit"}},
  };
  const std::string kind = text(require(doc, "kind", ""), "kind");
  auto kit = allowed.find(kind);
  if (kit == allowed.end()) fail("kind", "unknown kind '" + kind + "'");
  for (const auto& [key, value] : doc.items()) {
    if (key == "kind" || key == "sandwich" || key == "certifier") continue;
    if (std::find(kit->second.begin(), kit->second.end(), key) == kit->second.end()) {
      fail(key, "unknown key for kind " + kind);
    }
  }

  InstanceFile file;
  if (kind == "matrix_game") {
    file.payload = MatrixGameSpec{matrix_of(require(doc, "matrix", ""), "matrix")};
  } else if (kind == "polytope_bilinear") {
    PolytopeBilinearSpec p;
    p.matrix = matrix_of(require(doc, "matrix", ""), "matrix");
    p.x_halfspaces = halfspaces_of(require(doc, "x_halfspaces", ""), "x_halfspaces",
                                   static_cast<int>(p.matrix.rows()));
    p.y_halfspaces = halfspaces_of(require(doc, "y_halfspaces", ""), "y_halfspaces",
                                   static_cast<int>(p.matrix.cols()));
    file.payload = std::move(p);
  } else if (kind == "popular_matching") {
    file.payload = matching_of(doc);
  } else {
    file.payload = cover_of(doc);
  }

  if (doc.contains("sandwich")) {
    const json& s = doc["sandwich"];
    if (!s.is_object()) fail("sandwich", "expected an object with keys x and/or y");
    for (const auto& [key, value] : s.items()) {
      if (key == "x") file.sandwich_x = sandwich_of(value, "sandwich.x");
      else if (key == "y") file.sandwich_y = sandwich_of(value, "sandwich.y");
      else fail("sandwich." + key, "unknown key");
    }
  }
  if (doc.contains("certifier")) {
    file.certifier = text(doc["certifier"], "certifier");
    if (file.certifier != "auto" && file.certifier != "sampled") {
      fail("certifier", "expected \"auto\" or \"sampled\"");
    }
  }
  return file;
}

InstanceFile load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read instance file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

std::string serialize_instance(const InstanceFile& file) {
  json doc = json::object();
  doc["kind"] = file.kind();
  if (const auto* mg = std::get_if<MatrixGameSpec>(&file.payload)) {
    doc["matrix"] = to_json(mg->matrix);
  } else if (const auto* pb = std::get_if<PolytopeBilinearSpec>(&file.payload)) {
    doc["matrix"] = to_json(pb->matrix);
    doc["x_halfspaces"] = to_json(pb->x_halfspaces);
    doc["y_halfspaces"] = to_json(pb->y_halfspaces);
  } else if (const auto* pm = std::get_if<MatchingInstance>(&file.payload)) {
    doc["agents"] = pm->agents;
    doc["posts"] = pm->posts;
    json edges = json::array();
    for (const MatchingEdge& e : pm->edges) {
      edges.push_back({{"agent", pm->agents.at(e.agent)},
                       {"post", pm->posts.at(e.post)},
                       {"rank", e.rank}});
    }
    doc["edges"] = std::move(edges);
  } else {
    const auto& sc = std::get<SubmodularCoverInstance>(file.payload);
    doc["ground_set_size"] = sc.ground_set_size;
    doc["sets"] = sc.sets;
    if (sc.f_kind == "coverage") doc["f"] = "coverage";
    else doc["f"] = sc.f_table;
    doc["n_limit"] = sc.n_limit;
  }
  if (file.sandwich_x || file.sandwich_y) {
    json s = json::object();
    if (file.sandwich_x) s["x"] = to_json(*file.sandwich_x);
    if (file.sandwich_y) s["y"] = to_json(*file.sandwich_y);
    doc["sandwich"] = std::move(s);
  }
  doc["certifier"] = file.certifier;
  return doc.dump(2) + "\n";
}

Instance build_instance(const InstanceFile& file) {
  Instance inst = std::visit(
      [&](const auto& p) -> Instance {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, MatrixGameSpec>) {
          if (file.sandwich_x || file.sandwich_y) {
            throw ConfigError("sandwich overrides are not supported for matrix games");
          }
          return build_matrix_game(p.matrix);
        } else if constexpr (std::is_same_v<T, PolytopeBilinearSpec>) {
          return build_polytope_bilinear(p.matrix, p.x_halfspaces, p.y_halfspaces,
                                         file.sandwich_x, file.sandwich_y);
        } else if constexpr (std::is_same_v<T, MatchingInstance>) {
          return build_popular_matching(p, file.sandwich_x, file.sandwich_y);
        } else {
          return build_submodular_cover(p, file.sandwich_x, file.sandwich_y);
        }
      },
      file.payload);
  if (file.certifier == "sampled") inst.certifier.reset();
  return inst;
}

}  // namespace saddle
