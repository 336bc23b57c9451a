// Copyright 2026 The Slabsum Authors
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

// Private JSON helpers shared by the serializers in core/src.

#ifndef SLABSUM_SRC_JSON_UTIL_H_
#define SLABSUM_SRC_JSON_UTIL_H_

#include <string>

#include "json.hpp"
#include "slabsum/instance.h"
#include "slabsum/numerics.h"

namespace slabsum::internal {

using Json = nlohmann::ordered_json;

inline Json RationalToJson(const Rational& value) {
  Json out = Json::object();
  out["num"] = ToDecimal(value.get_num());
  out["den"] = ToDecimal(value.get_den());
  return out;
}

inline Json VertexToJson(const Vertex& x) {
  Json out = Json::array();
  for (auto bit : x) out.push_back(static_cast<int>(bit));
  return out;
}

// Pretty-printed with a trailing newline; key order is insertion order so
// identical inputs give byte-identical files.
inline std::string Dump(const Json& value) { return value.dump(2) + "\n"; }

}  // namespace slabsum::internal

#endif  // SLABSUM_SRC_JSON_UTIL_H_
