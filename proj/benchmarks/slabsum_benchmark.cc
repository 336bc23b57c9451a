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

#include <cstdint>
#include <vector>

#include "benchmark/benchmark.h"
#include "slabsum/dp.h"
#include "slabsum/errors.h"
#include "slabsum/instance.h"
#include "slabsum/oracle.h"
#include "slabsum/slab.h"

namespace slabsum {
namespace {

// First seed whose instance quantizes at N = n^2 without zero entries.
PartitionInstance Quantizable(int n, int bits) {
  for (std::uint64_t seed = 1;; ++seed) {
    PartitionInstance inst = GenerateRandomPartition(n, bits, seed);
    try {
      QuantizeWithExponent(inst, 2);
      return inst;
    } catch (const QuantizationUnderflow&) {
    }
  }
}

void BM_DpDecide(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PartitionInstance inst = GenerateRandomPartition(n, 16, 1);
  const BigInt target = inst.WeightSum() / 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(DpDecide(inst.weights, target));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_DpDecide)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void BM_DecideFirstHit(benchmark::State& state) {
  const PartitionInstance inst = Quantizable(static_cast<int>(state.range(0)), 32);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Decide(inst, 2));
  }
}
BENCHMARK(BM_DecideFirstHit)->RangeMultiplier(2)->Range(16, 128);

void BM_DecideFullScan(benchmark::State& state) {
  const PartitionInstance inst = Quantizable(static_cast<int>(state.range(0)), 32);
  DecideOptions options;
  options.full_scan = true;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Decide(inst, 2, options));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DecideFullScan)
    ->RangeMultiplier(2)
    ->Range(16, 128)
    ->Complexity()
    ->Unit(benchmark::kMillisecond);

void BM_OraclePartition(benchmark::State& state) {
  const PartitionInstance inst =
      GenerateRandomPartition(static_cast<int>(state.range(0)), 20, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(EnumeratePartition(inst));
  }
}
BENCHMARK(BM_OraclePartition)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace slabsum

BENCHMARK_MAIN();
