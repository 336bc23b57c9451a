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

// Instance file reader and writer.

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json_util.h"
#include "slabsum/errors.h"
#include "slabsum/instance.h"

namespace slabsum {

namespace {

using internal::Json;

Json WeightsToJson(const std::vector<BigInt>& weights) {
  Json out = Json::array();
  for (const BigInt& w : weights) out.push_back(ToDecimal(w));
  return out;
}

Json MetaToJson(const InstanceMeta& meta) {
  Json out = Json::object();
  if (meta.n) out["n"] = *meta.n;
  if (meta.m) out["m"] = *meta.m;
  if (meta.seed) out["seed"] = *meta.seed;
  if (meta.planted_x) out["planted_x"] = internal::VertexToJson(*meta.planted_x);
  return out;
}

// Walks a parsed document while tracking the JSON pointer of the current
// node so every error names the offending field.
class Reader {
 public:
  Reader(const Json& node, std::string path)
      : node_(node), path_(std::move(path)) {}

  Reader Field(const std::string& key) const {
    if (!node_.is_object()) Fail("expected an object");
    const auto it = node_.find(key);
    if (it == node_.end()) {
      throw ParseError(path_ + "/" + key, "missing required field \"" + key +
                                              "\"");
    }
    return Reader(*it, path_ + "/" + key);
  }

  bool Has(const std::string& key) const {
    return node_.is_object() && node_.contains(key);
  }

  Reader At(std::size_t index) const {
    return Reader(node_.at(index), path_ + "/" + std::to_string(index));
  }

  std::size_t ArraySize() const {
    if (!node_.is_array()) Fail("expected an array");
    return node_.size();
  }

  std::string String() const {
    if (!node_.is_string()) Fail("expected a decimal string");
    return node_.get<std::string>();
  }

  BigInt Integer() const {
    try {
      return ParseBigInt(String());
    } catch (const DomainError& e) {
      Fail(e.what());
    }
  }

  std::int64_t Int64() const {
    if (!node_.is_number_integer()) Fail("expected an integer");
    return node_.get<std::int64_t>();
  }

  std::uint64_t Uint64() const {
    if (!node_.is_number_unsigned() &&
        !(node_.is_number_integer() && node_.get<std::int64_t>() >= 0)) {
      Fail("expected a non-negative integer");
    }
    return node_.get<std::uint64_t>();
  }

  std::vector<BigInt> Integers() const {
    std::vector<BigInt> out;
    const std::size_t size = ArraySize();
    for (std::size_t i = 0; i < size; ++i) out.push_back(At(i).Integer());
    return out;
  }

  Rational RationalValue() const {
    const BigInt num = Field("num").Integer();
    const BigInt den = Field("den").Integer();
    if (den == 0) Fail("zero denominator");
    return MakeRational(num, den);
  }

  Vertex Bits() const {
    Vertex out;
    const std::size_t size = ArraySize();
    for (std::size_t i = 0; i < size; ++i) {
      const std::int64_t bit = At(i).Int64();
      if (bit != 0 && bit != 1) At(i).Fail("expected 0 or 1");
      out.push_back(static_cast<std::uint8_t>(bit));
    }
    return out;
  }

  [[noreturn]] void Fail(const std::string& message) const {
    throw ParseError(path_.empty() ? "/" : path_, message);
  }

  const std::string& path() const { return path_; }

 private:
  const Json& node_;
  std::string path_;
};

std::string LineColumn(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

int MaxBits(const std::vector<BigInt>& weights) {
  int bits = 0;
  for (const BigInt& w : weights) bits = std::max(bits, BitLength(w));
  return bits;
}

void ValidateAt(const Reader& where, const auto& instance) {
  try {
    instance.Validate();
  } catch (const DomainError& e) {
    where.Fail(e.what());
  }
}

}  // namespace

std::string WriteInstanceJson(const InstanceFile& file) {
  Json out = Json::object();
  std::visit(
      [&out](const auto& inst) {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, SspInstance>) {
          out["kind"] = "ssp";
          out["weights"] = WeightsToJson(inst.weights);
          out["target"] = ToDecimal(inst.target);
        } else if constexpr (std::is_same_v<T, PartitionInstance>) {
          out["kind"] = "partition";
          out["weights"] = WeightsToJson(inst.weights);
        } else {
          out["kind"] = "sssp";
          Json rows = Json::array();
          for (const auto& row : inst.weight_rows) {
            rows.push_back(WeightsToJson(row));
          }
          out["weight_rows"] = std::move(rows);
          out["rho"] = internal::RationalToJson(inst.rho);
          out["delta"] = internal::RationalToJson(inst.delta);
        }
      },
      file.instance);
  out["meta"] = MetaToJson(file.meta);
  return internal::Dump(out);
}

InstanceFile ReadInstanceJson(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(LineColumn(text, e.byte == 0 ? 0 : e.byte - 1),
                     "malformed JSON");
  }
  const Reader root(doc, "");
  if (!doc.is_object()) root.Fail("expected a JSON object");

  InstanceFile file;
  if (root.Has("meta")) {
    const Reader meta = root.Field("meta");
    if (meta.Has("n")) file.meta.n = meta.Field("n").Int64();
    if (meta.Has("m")) file.meta.m = meta.Field("m").Int64();
    if (meta.Has("seed")) file.meta.seed = meta.Field("seed").Uint64();
    if (meta.Has("planted_x")) {
      file.meta.planted_x = meta.Field("planted_x").Bits();
    }
  }

  const std::string kind = root.Field("kind").String();
  if (kind == "ssp" || kind == "partition") {
    const Reader weights_node = root.Field("weights");
    std::vector<BigInt> weights = weights_node.Integers();
    const int bits =
        file.meta.m ? static_cast<int>(*file.meta.m) : MaxBits(weights);
    if (file.meta.n && *file.meta.n != static_cast<std::int64_t>(weights.size())) {
      root.Field("meta").Field("n").Fail("does not match the weight count");
    }
    if (kind == "ssp") {
      SspInstance inst{std::move(weights), root.Field("target").Integer(), bits};
      ValidateAt(weights_node, inst);
      file.instance = std::move(inst);
    } else {
      PartitionInstance inst{std::move(weights), bits};
      ValidateAt(weights_node, inst);
      file.instance = std::move(inst);
    }
  } else if (kind == "sssp") {
    const Reader rows_node = root.Field("weight_rows");
    SsspInstance inst;
    const std::size_t rows = rows_node.ArraySize();
    for (std::size_t i = 0; i < rows; ++i) {
      inst.weight_rows.push_back(rows_node.At(i).Integers());
    }
    inst.rho = root.Field("rho").RationalValue();
    inst.delta = root.Field("delta").RationalValue();
    ValidateAt(rows_node, inst);
    file.instance = std::move(inst);
  } else {
    root.Field("kind").Fail("unknown kind \"" + kind +
                            "\" (expected ssp, partition or sssp)");
  }
  return file;
}

void SaveInstance(const std::string& path, const InstanceFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << WriteInstanceJson(file);
  if (!out) throw Error("failed writing " + path);
}

InstanceFile LoadInstance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ReadInstanceJson(buffer.str());
}

}  // namespace slabsum
