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

#include "slabsum/instance.h"

#include <algorithm>
#include <bit>
#include <random>
#include <utility>

#include "slabsum/errors.h"

namespace slabsum {

namespace {

constexpr int kMaxPlantingAttempts = 100000;

// The standard distributions are implementation defined; everything below
// only consumes raw mt19937_64 words so instances are identical everywhere.
using Rng = std::mt19937_64;

std::uint64_t UniformBelow(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = bound * (~std::uint64_t{0} / bound);
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return draw % bound;
}

// Uniform in [0, 2^bits).
BigInt RandomBits(Rng& rng, int bits) {
  BigInt out = 0;
  int remaining = bits;
  while (remaining > 0) {
    const int take = std::min(remaining, 64);
    std::uint64_t word = rng();
    if (take < 64) word &= (std::uint64_t{1} << take) - 1;
    BigInt chunk;
    mpz_import(chunk.get_mpz_t(), 1, -1, sizeof(word), 0, 0, &word);
    out <<= take;
    out += chunk;
    remaining -= take;
  }
  return out;
}

// Uniform in [1, 2^bits).
BigInt RandomWeight(Rng& rng, int bits) {
  for (;;) {
    BigInt w = RandomBits(rng, bits);
    if (w != 0) return w;
  }
}

void Shuffle(Rng& rng, std::vector<std::size_t>& items) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[UniformBelow(rng, i)]);
  }
}

void CheckSizes(int n, int bits) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (bits < 1) throw DomainError("bits must be >= 1");
}

// Fills `weights` so that the entries at `left` and at `right` have equal
// sums; the last entry of `right` is the correction term.
void PlantRow(Rng& rng, int bits, const std::vector<std::size_t>& left,
              const std::vector<std::size_t>& right,
              std::vector<BigInt>& weights) {
  BigInt limit = 1;
  limit <<= bits;
  for (int attempt = 0; attempt < kMaxPlantingAttempts; ++attempt) {
    BigInt balance = 0;
    for (std::size_t i : left) {
      weights[i] = RandomWeight(rng, bits);
      balance += weights[i];
    }
    for (std::size_t k = 0; k + 1 < right.size(); ++k) {
      weights[right[k]] = RandomWeight(rng, bits);
      balance -= weights[right[k]];
    }
    if (balance >= 1 && balance < limit) {
      weights[right.back()] = balance;
      return;
    }
  }
  throw DomainError("planted generator did not converge for bits=" +
                    std::to_string(bits));
}

struct Halves {
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
};

Halves SplitPositions(Rng& rng, int n) {
  std::vector<std::size_t> order(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Shuffle(rng, order);
  Halves h;
  h.left.assign(order.begin(), order.begin() + n / 2);
  h.right.assign(order.begin() + n / 2, order.end());
  return h;
}

}  // namespace

void SspInstance::Validate() const {
  if (weights.empty()) throw DomainError("instance has no weights");
  BigInt limit = 1;
  limit <<= bits;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] < 1 || weights[i] >= limit) {
      throw DomainError("weight " + std::to_string(i) +
                        " outside [1, 2^" + std::to_string(bits) + ")");
    }
  }
  if (target < 0 || target > Sum(weights)) {
    throw DomainError("target outside [0, sum of weights]");
  }
}

void PartitionInstance::Validate() const {
  SspInstance{weights, 0, bits}.Validate();
}

void SsspInstance::Validate() const {
  const std::size_t rows = p();
  if (rows == 0 || !std::has_single_bit(rows)) {
    throw DomainError("p must be a power of two, got " + std::to_string(rows));
  }
  if (rows >= n()) throw DomainError("p must be smaller than n");
  for (const auto& row : weight_rows) {
    if (row.size() != n()) throw DomainError("weight rows differ in length");
    for (const BigInt& w : row) {
      if (w < 1) throw DomainError("weights must be positive");
    }
  }
  if (rho <= 0) throw DomainError("rho must be > 0");
  if (delta <= 0) throw DomainError("delta must be > 0");
}

PartitionInstance GenerateRandomPartition(int n, int bits,
                                          std::uint64_t seed) {
  CheckSizes(n, bits);
  Rng rng(seed);
  PartitionInstance out;
  out.bits = bits;
  out.weights.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.weights.push_back(RandomWeight(rng, bits));
  return out;
}

SspInstance GenerateRandomSsp(int n, int bits, std::uint64_t seed) {
  CheckSizes(n, bits);
  Rng rng(seed);
  SspInstance out;
  out.bits = bits;
  out.target = 0;
  for (int i = 0; i < n; ++i) out.weights.push_back(RandomWeight(rng, bits));
  for (const BigInt& w : out.weights) {
    if (rng() & 1) out.target += w;
  }
  return out;
}

PlantedPartition GeneratePlantedPartition(int n, int bits,
                                          std::uint64_t seed) {
  CheckSizes(n, bits);
  if (n % 2 != 0) {
    throw DomainError("planted generator needs an even n, got " +
                      std::to_string(n));
  }
  Rng rng(seed);
  const Halves halves = SplitPositions(rng, n);
  PlantedPartition out;
  out.instance.bits = bits;
  out.instance.weights.assign(static_cast<std::size_t>(n), BigInt(0));
  PlantRow(rng, bits, halves.left, halves.right, out.instance.weights);
  out.planted_x.assign(static_cast<std::size_t>(n), 0);
  for (std::size_t i : halves.left) out.planted_x[i] = 1;
  return out;
}

PlantedSssp GeneratePlantedSssp(int n, int p, int bits, std::uint64_t seed,
                                const Rational& rho, const Rational& delta,
                                bool duplicate_rows) {
  CheckSizes(n, bits);
  if (n % 2 != 0) throw DomainError("planted generator needs an even n");
  Rng rng(seed);
  const Halves halves = SplitPositions(rng, n);
  PlantedSssp out;
  out.instance.rho = rho;
  out.instance.delta = delta;
  for (int i = 0; i < p; ++i) {
    std::vector<BigInt> row(static_cast<std::size_t>(n), BigInt(0));
    if (duplicate_rows && i > 0) {
      row = out.instance.weight_rows.front();
    } else {
      PlantRow(rng, bits, halves.left, halves.right, row);
    }
    out.instance.weight_rows.push_back(std::move(row));
  }
  out.planted_x.assign(static_cast<std::size_t>(n), 0);
  for (std::size_t i : halves.left) out.planted_x[i] = 1;
  out.instance.Validate();
  return out;
}

bool operator==(const SspInstance& a, const SspInstance& b) {
  return a.weights == b.weights && a.target == b.target && a.bits == b.bits;
}

bool operator==(const PartitionInstance& a, const PartitionInstance& b) {
  return a.weights == b.weights && a.bits == b.bits;
}

bool operator==(const SsspInstance& a, const SsspInstance& b) {
  return a.weight_rows == b.weight_rows && a.rho == b.rho &&
         a.delta == b.delta;
}

bool operator==(const InstanceMeta& a, const InstanceMeta& b) {
  return a.n == b.n && a.m == b.m && a.seed == b.seed &&
         a.planted_x == b.planted_x;
}

bool operator==(const InstanceFile& a, const InstanceFile& b) {
  return a.instance == b.instance && a.meta == b.meta;
}

}  // namespace slabsum
