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

#ifndef SLABSUM_INSTANCE_H_
#define SLABSUM_INSTANCE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "slabsum/numerics.h"

namespace slabsum {

// A vertex of the unit hypercube, one 0/1 entry per item.
using Vertex = std::vector<std::uint8_t>;

// Exists x in {0,1}^n with S^T x = target?
struct SspInstance {
  std::vector<BigInt> weights;
  BigInt target;
  int bits = 0;  // every weight is < 2^bits

  std::size_t n() const { return weights.size(); }
  // Throws DomainError unless n >= 1, 1 <= w < 2^bits and target <= sum.
  void Validate() const;
};

// Subset-sum with the implied target sum(S) / 2, i.e. the hyperplane
// S^T (x - 1/2) = 0 through the hypercube center.
struct PartitionInstance {
  std::vector<BigInt> weights;
  int bits = 0;

  std::size_t n() const { return weights.size(); }
  BigInt WeightSum() const { return Sum(weights); }
  void Validate() const;
};

// p simultaneous partition constraints sharing one vertex x.
struct SsspInstance {
  std::vector<std::vector<BigInt>> weight_rows;
  Rational rho;    // distance of the shell centers from the cube center
  Rational delta;  // target residual of the shell problem

  std::size_t n() const {
    return weight_rows.empty() ? 0 : weight_rows.front().size();
  }
  std::size_t p() const { return weight_rows.size(); }
  // p a power of two with p < n, rows positive and of equal length,
  // rho > 0, delta > 0.
  void Validate() const;
};

using Instance = std::variant<SspInstance, PartitionInstance, SsspInstance>;

struct InstanceMeta {
  std::optional<std::int64_t> n;
  std::optional<std::int64_t> m;
  std::optional<std::uint64_t> seed;
  std::optional<Vertex> planted_x;
};

struct InstanceFile {
  Instance instance;
  InstanceMeta meta;
};

struct PlantedPartition {
  PartitionInstance instance;
  Vertex planted_x;
};

// n weights drawn uniformly from [1, 2^bits). Pure function of its inputs.
PartitionInstance GenerateRandomPartition(int n, int bits, std::uint64_t seed);

// Random weights plus a target equal to the sum of a random subset.
SspInstance GenerateRandomSsp(int n, int bits, std::uint64_t seed);

// Instance with an exact partition. Half of the positions carry freely drawn
// weights; the other half mirror them in total, with the last weight acting
// as the correction term. Requires even n >= 2; the weight sum is even.
PlantedPartition GeneratePlantedPartition(int n, int bits, std::uint64_t seed);

// p rows that all admit the same planted vertex as an exact partition.
// When `duplicate_rows` is set every row equals the first.
struct PlantedSssp {
  SsspInstance instance;
  Vertex planted_x;
};
PlantedSssp GeneratePlantedSssp(int n, int p, int bits, std::uint64_t seed,
                                const Rational& rho, const Rational& delta,
                                bool duplicate_rows = false);

// JSON persistence; all integers are written as decimal strings.
std::string WriteInstanceJson(const InstanceFile& file);
InstanceFile ReadInstanceJson(std::string_view text);
void SaveInstance(const std::string& path, const InstanceFile& file);
InstanceFile LoadInstance(const std::string& path);

bool operator==(const SspInstance& a, const SspInstance& b);
bool operator==(const PartitionInstance& a, const PartitionInstance& b);
bool operator==(const SsspInstance& a, const SsspInstance& b);
bool operator==(const InstanceMeta& a, const InstanceMeta& b);
bool operator==(const InstanceFile& a, const InstanceFile& b);

}  // namespace slabsum

#endif  // SLABSUM_INSTANCE_H_
