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

#include "slabsum/oracle.h"

#include <random>
#include <set>

#include "gtest/gtest.h"
#include "slabsum/errors.h"

namespace slabsum {
namespace {

PartitionInstance MakePartition(std::initializer_list<int> weights) {
  PartitionInstance inst;
  for (int w : weights) inst.weights.emplace_back(w);
  inst.bits = 8;
  return inst;
}

TEST(EnumerateTest, TwoEqualWeights) {
  const OracleReport r = EnumeratePartition(MakePartition({1, 1}));
  EXPECT_EQ(r.count, 2u);
  EXPECT_EQ(r.solutions.size(), 2u);
  EXPECT_EQ(r.min_distance_sq, 0);
}

TEST(EnumerateTest, NoPartitionReportsNearestPlaneDistance) {
  // |S^T x - 3/2| is at least 1/2, so the distance is 1/(2 sqrt 5).
  const OracleReport r = EnumeratePartition(MakePartition({1, 2}));
  EXPECT_EQ(r.count, 0u);
  EXPECT_EQ(r.min_distance_sq, Rational(1, 20));
  EXPECT_EQ(r.nearest.size(), 2u);
}

TEST(EnumerateTest, PlantedSolutionsComeInComplementPairs) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const PlantedPartition p = GeneratePlantedPartition(18, 12, seed);
    OracleOptions opts;
    opts.max_solutions = 1 << 20;
    const OracleReport r = EnumeratePartition(p.instance, opts);
    EXPECT_GE(r.count, 2u);
    EXPECT_EQ(r.count % 2, 0u);
    ASSERT_EQ(r.solutions.size(), r.count);
    std::set<Vertex> all(r.solutions.begin(), r.solutions.end());
    EXPECT_TRUE(all.count(p.planted_x));
    for (const Vertex& x : r.solutions) {
      Vertex c = x;
      for (auto& b : c) b ^= 1;
      EXPECT_TRUE(all.count(c));
    }
  }
}

TEST(EnumerateTest, SubsetSumCountsMatchBruteForce) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const SspInstance inst = GenerateRandomSsp(12, 6, trial);
    std::uint64_t expected = 0;
    for (std::uint32_t mask = 0; mask < (1u << 12); ++mask) {
      BigInt s = 0;
      for (int k = 0; k < 12; ++k) {
        if ((mask >> k) & 1) s += inst.weights[k];
      }
      if (s == inst.target) ++expected;
    }
    const OracleReport r = EnumerateSubsetSum(inst);
    EXPECT_EQ(r.count, expected);
    for (const Vertex& x : r.solutions) EXPECT_EQ(WeightOf(inst.weights, x), inst.target);
  }
}

TEST(EnumerateTest, BigWeightsUseExactPath) {
  SspInstance inst;
  inst.weights = {BigInt(1) << 70, BigInt(1) << 70, (BigInt(1) << 71)};
  inst.target = BigInt(1) << 71;
  inst.bits = 72;
  EXPECT_EQ(EnumerateSubsetSum(inst).count, 2u);
}

TEST(EnumerateTest, RefusesAboveCap) {
  OracleOptions opts;
  opts.max_n = 10;
  EXPECT_THROW(EnumeratePartition(GenerateRandomPartition(11, 8, 0), opts),
               DomainError);
}

TEST(EnumerateTest, ThreadCountDoesNotChangeReport) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const PartitionInstance inst = GenerateRandomPartition(16, 6, seed);
    OracleOptions many;
    many.threads = 4;
    const OracleReport a = EnumeratePartition(inst);
    const OracleReport b = EnumeratePartition(inst, many);
    EXPECT_EQ(a.count, b.count);
    EXPECT_EQ(a.solutions, b.solutions);
    EXPECT_EQ(a.min_distance_sq, b.min_distance_sq);
    EXPECT_EQ(a.nearest, b.nearest);
  }
}

TEST(PopulationTest, ThickSlabHoldsEveryVertex) {
  SlabSpec slab;
  slab.normal = {BigInt(3), BigInt(1), BigInt(4), BigInt(1), BigInt(5)};
  // Every vertex is within sqrt(n)/2 of the center.
  slab.thickness_sq = Rational(5);
  EXPECT_EQ(SlabPopulation(slab).count, 32u);
}

TEST(PopulationTest, ZeroThicknessIsTheHyperplane) {
  SlabSpec slab;
  slab.normal = {BigInt(1), BigInt(1)};
  slab.thickness_sq = 0;
  EXPECT_EQ(SlabPopulation(slab).count, 2u);
}

TEST(PopulationTest, MatchesPerVertexTest) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    SlabSpec slab;
    for (int k = 0; k < 10; ++k) slab.normal.emplace_back(static_cast<unsigned long>(rng() % 50 + 1));
    slab.thickness_sq = Rational(static_cast<long>(rng() % 200), 100);
    slab.thickness_sq.canonicalize();
    if (trial % 2) {
      Point c;
      for (int k = 0; k < 10; ++k) {
        c.emplace_back(static_cast<long>(rng() % 7), 5);
        c.back().canonicalize();
      }
      slab.center = c;
    }
    std::uint64_t expected = 0;
    for (std::uint32_t mask = 0; mask < (1u << 10); ++mask) {
      Vertex x(10);
      for (int k = 0; k < 10; ++k) x[k] = (mask >> k) & 1;
      if (SlabContains(slab, x)) ++expected;
    }
    const PopulationReport r = SlabPopulation(slab);
    EXPECT_EQ(r.count, expected) << "trial " << trial;
    for (const Vertex& x : r.witnesses) EXPECT_TRUE(SlabContains(slab, x));
  }
}

TEST(L0Test, SingleShellThroughEveryVertex) {
  // A shell centered at the cube center with radius sqrt(n)/2 passes
  // through every vertex.
  const std::size_t n = 6;
  const std::vector<Shell> shells = {
      Shell{CubeCenter(n), Rational(3, 2), Rational(0)}};
  for (std::uint32_t mask = 0; mask < 64; ++mask) {
    Vertex x(n);
    for (std::size_t k = 0; k < n; ++k) x[k] = (mask >> k) & 1;
    EXPECT_EQ(EvalL0(x, shells), 0);
  }
  EXPECT_EQ(MinVertexL0(shells).value, 0);
}

TEST(L0Test, MinimumMatchesScan) {
  std::mt19937_64 rng(1);
  const std::size_t n = 8;
  std::vector<Shell> shells;
  for (int i = 0; i < 2; ++i) {
    Shell s;
    for (std::size_t k = 0; k < n; ++k) {
      s.center.emplace_back(static_cast<long>(rng() % 9) - 4, 3);
      s.center.back().canonicalize();
    }
    s.radius_sq = Rational(static_cast<long>(rng() % 20 + 1));
    s.half_thickness = 0;
    shells.push_back(s);
  }
  Rational best = -1;
  for (std::uint32_t mask = 0; mask < 256; ++mask) {
    Vertex x(n);
    for (std::size_t k = 0; k < n; ++k) x[k] = (mask >> k) & 1;
    const Rational v = EvalL0(x, shells);
    EXPECT_GE(v, 0);
    if (best < 0 || v < best) best = v;
  }
  OracleOptions many;
  many.threads = 3;
  const L0Minimum m = MinVertexL0(shells, many);
  EXPECT_EQ(m.value, best);
  EXPECT_EQ(EvalL0(m.argmin, shells), best);
  EXPECT_EQ(MinVertexL0(shells).argmin, m.argmin);
}

}  // namespace
}  // namespace slabsum
