// Copyright 2026 The ifsfit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON form of a fitted model:
//
//   {"support": [alpha, beta], "kind": "W1", "maps": [[a, b], ...], "p": [...]}
//
// Doubles are written in shortest round-trip form, so a save/load cycle
// reproduces the model bit for bit.

#ifndef IFS_MODEL_IO_HPP
#define IFS_MODEL_IO_HPP

#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "ifs/affine_maps.hpp"
#include "ifs/errors.hpp"
#include "ifs/ifs_operator.hpp"
#include "json.hpp"

namespace ifs {

inline nlohmann::json model_to_json(const IfsModel& model) {
  nlohmann::json maps = nlohmann::json::array();
  for (const auto& m : model.family().maps) maps.push_back({m.a(), m.b()});
  const auto p = model.probabilities().values();
  return {{"support", {model.support().alpha(), model.support().beta()}},
          {"kind", std::string(to_string(model.family().kind))},
          {"maps", std::move(maps)},
          {"p", std::vector<double>(p.begin(), p.end())}};
}

inline IfsModel model_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw SchemaError("model must be a JSON object");
    for (const char* key : {"support", "kind", "maps", "p"}) {
      if (!j.contains(key)) throw SchemaError(std::string("model is missing \"") + key + "\"");
    }
    const auto& sup = j.at("support");
    if (!sup.is_array() || sup.size() != 2) throw SchemaError("\"support\" must be [alpha, beta]");
    auto kind = parse_map_kind(j.at("kind").get<std::string>());
    if (!kind) throw SchemaError("unknown map family kind");

    MapFamily family;
    family.kind = *kind;
    family.support = SupportInterval(sup[0].get<double>(), sup[1].get<double>());
    const auto& maps = j.at("maps");
    if (!maps.is_array() || maps.empty()) throw SchemaError("\"maps\" must be a nonempty array");
    for (const auto& m : maps) {
      if (!m.is_array() || m.size() != 2) throw SchemaError("each map must be [a, b]");
      family.maps.emplace_back(m[0].get<double>(), m[1].get<double>());
    }
    family.merge_counts.assign(family.maps.size(), 1);
    family.intervals = family.maps.size();
    auto p = j.at("p").get<std::vector<double>>();
    return IfsModel(std::move(family), ProbabilityVector(std::move(p)));
  } catch (const SchemaError&) {
    throw;
  } catch (const std::exception& e) {
    throw SchemaError(std::string("invalid model: ") + e.what());
  }
}

inline void save_model(const IfsModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot open " + path + " for writing");
  out << model_to_json(model).dump(2) << '\n';
}

inline IfsModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open model file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("model file " + path + " is not valid JSON: " + e.what());
  }
  return model_from_json(j);
}

}  // namespace ifs

#endif  // IFS_MODEL_IO_HPP
