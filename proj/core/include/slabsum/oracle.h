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

// Brute force over all 2^n vertices of the hypercube. Used as ground truth
// by the tests and by the `oracle` command; keep it simple.
//
// The vertex space is split into a fixed number of shards by the top bits;
// each shard walks its low bits in Gray-code order with one add or subtract
// per step. Shard results are merged in shard order, so reports do not
// depend on the thread count.

#ifndef SLABSUM_ORACLE_H_
#define SLABSUM_ORACLE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "slabsum/geometry.h"
#include "slabsum/instance.h"
#include "slabsum/numerics.h"
#include "slabsum/slab.h"

namespace slabsum {

struct OracleOptions {
  std::size_t max_n = 26;
  std::size_t max_solutions = 64;  // witnesses kept; counts are exact
  int threads = 1;
};

struct OracleReport {
  std::vector<Vertex> solutions;  // capped
  std::uint64_t count = 0;        // exact number of solutions
  Rational min_distance_sq;       // to the hyperplane, over all vertices
  Vertex nearest;                 // first vertex attaining min_distance_sq
};

// Solutions of S^T (x - 1/2 * 1) = 0.
OracleReport EnumeratePartition(const PartitionInstance& instance,
                                const OracleOptions& options = {});
// Solutions of S^T x = T.
OracleReport EnumerateSubsetSum(const SspInstance& instance,
                                const OracleOptions& options = {});

struct PopulationReport {
  std::uint64_t count = 0;
  std::vector<Vertex> witnesses;  // capped
};

// Vertices of the slab, counted exactly.
PopulationReport SlabPopulation(const SlabSpec& slab,
                                const OracleOptions& options = {});

// sum_i (||x - C_i||^2 - R_i^2)^2, exact.
Rational EvalL0(std::span<const std::uint8_t> x, std::span<const Shell> shells);

struct L0Minimum {
  Rational value;
  Vertex argmin;
};
L0Minimum MinVertexL0(std::span<const Shell> shells,
                      const OracleOptions& options = {});

}  // namespace slabsum

#endif  // SLABSUM_ORACLE_H_
