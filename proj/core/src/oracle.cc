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

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>

#include "parallel.h"
#include "slabsum/errors.h"

namespace slabsum {

namespace {

constexpr std::size_t kMaxShardBits = 6;

void CheckSize(std::size_t n, const OracleOptions& options) {
  if (n > options.max_n) {
    throw DomainError("oracle refuses n = " + std::to_string(n) +
                      " above its cap of " + std::to_string(options.max_n));
  }
  if (n >= 63) throw DomainError("oracle cannot enumerate n >= 63");
}

bool FitsWord(const BigInt& v) {
  static const BigInt kLimit = BigInt(1) << 62;
  return abs(v) < kLimit;
}

std::int64_t ToWord(const BigInt& v) { return v.get_si(); }

BigInt ToBig(std::int64_t v) { return BigInt(static_cast<long>(v)); }
BigInt ToBig(const BigInt& v) { return v; }

template <typename Acc>
Acc Convert(const BigInt& v) {
  if constexpr (std::is_same_v<Acc, BigInt>) {
    return v;
  } else {
    return ToWord(v);
  }
}

// Calls visit(x, S^T x) for every vertex. Each shard fixes the top bits and
// walks the rest in Gray-code order; make_state() builds one state per
// shard, and the states are returned in shard order.
template <typename Acc, typename State, typename MakeState, typename Visit>
std::vector<State> Walk(std::span<const BigInt> weights, int threads,
                        MakeState make_state, Visit visit) {
  const std::size_t n = weights.size();
  const std::size_t shard_bits = std::min(n, kMaxShardBits);
  const std::size_t low_bits = n - shard_bits;
  std::vector<Acc> w;
  w.reserve(n);
  for (const BigInt& v : weights) w.push_back(Convert<Acc>(v));

  const std::size_t shards = std::size_t{1} << shard_bits;
  std::vector<State> states;
  states.reserve(shards);
  for (std::size_t s = 0; s < shards; ++s) states.push_back(make_state());

  internal::ParallelFor(shards, threads, [&](std::size_t shard) {
    State& state = states[shard];
    Vertex x(n, 0);
    Acc sum = 0;
    for (std::size_t b = 0; b < shard_bits; ++b) {
      if ((shard >> b) & 1) {
        x[low_bits + b] = 1;
        sum += w[low_bits + b];
      }
    }
    visit(state, x, sum);
    const std::uint64_t steps = std::uint64_t{1} << low_bits;
    for (std::uint64_t i = 1; i < steps; ++i) {
      const int j = std::countr_zero(i);
      if (x[j]) {
        x[j] = 0;
        sum -= w[j];
      } else {
        x[j] = 1;
        sum += w[j];
      }
      visit(state, x, sum);
    }
  });
  return states;
}

// Vertices with den * S^T x - num = 0, and the vertex minimizing
// |den * S^T x - num|.
template <typename Acc>
struct PlaneState {
  std::uint64_t count = 0;
  std::vector<Vertex> solutions;
  std::optional<Acc> best;
  Vertex nearest;
};

template <typename Acc>
OracleReport PlaneSearch(std::span<const BigInt> weights, const BigInt& num,
                         const BigInt& den, const OracleOptions& options) {
  const Acc a_num = Convert<Acc>(num);
  const Acc a_den = Convert<Acc>(den);
  const std::size_t cap = options.max_solutions;
  auto states = Walk<Acc, PlaneState<Acc>>(
      weights, options.threads, [] { return PlaneState<Acc>{}; },
      [&](PlaneState<Acc>& st, const Vertex& x, const Acc& sum) {
        Acc d = a_den * sum - a_num;
        if (d < 0) d = -d;
        if (d == 0) {
          ++st.count;
          if (st.solutions.size() < cap) st.solutions.push_back(x);
        }
        if (!st.best || d < *st.best) {
          st.best = d;
          st.nearest = x;
        }
      });

  OracleReport report;
  std::optional<Acc> best;
  for (auto& st : states) {
    report.count += st.count;
    for (auto& x : st.solutions) {
      if (report.solutions.size() < cap) report.solutions.push_back(x);
    }
    if (st.best && (!best || *st.best < *best)) {
      best = st.best;
      report.nearest = st.nearest;
    }
  }
  const BigInt d = ToBig(*best);
  report.min_distance_sq =
      Rational(BigInt(d * d), BigInt(den * den * SquaredNorm(weights)));
  report.min_distance_sq.canonicalize();
  return report;
}

OracleReport Plane(std::span<const BigInt> weights, const BigInt& num,
                   const BigInt& den, const OracleOptions& options) {
  CheckSize(weights.size(), options);
  if (FitsWord(den * Sum(weights)) && FitsWord(num) && FitsWord(den)) {
    return PlaneSearch<std::int64_t>(weights, num, den, options);
  }
  return PlaneSearch<BigInt>(weights, num, den, options);
}

template <typename Acc>
struct CountState {
  std::uint64_t count = 0;
  std::vector<Vertex> witnesses;
};

template <typename Acc>
PopulationReport CountRange(std::span<const BigInt> weights, const BigInt& lo,
                            const BigInt& hi, const OracleOptions& options) {
  const Acc a_lo = Convert<Acc>(lo);
  const Acc a_hi = Convert<Acc>(hi);
  const std::size_t cap = options.max_solutions;
  auto states = Walk<Acc, CountState<Acc>>(
      weights, options.threads, [] { return CountState<Acc>{}; },
      [&](CountState<Acc>& st, const Vertex& x, const Acc& sum) {
        if (a_lo <= sum && sum <= a_hi) {
          ++st.count;
          if (st.witnesses.size() < cap) st.witnesses.push_back(x);
        }
      });
  PopulationReport report;
  for (auto& st : states) {
    report.count += st.count;
    for (auto& x : st.witnesses) {
      if (report.witnesses.size() < cap) report.witnesses.push_back(x);
    }
  }
  return report;
}

}  // namespace

OracleReport EnumeratePartition(const PartitionInstance& instance,
                                const OracleOptions& options) {
  instance.Validate();
  return Plane(instance.weights, Sum(instance.weights), BigInt(2), options);
}

OracleReport EnumerateSubsetSum(const SspInstance& instance,
                                const OracleOptions& options) {
  instance.Validate();
  return Plane(instance.weights, instance.target, BigInt(1), options);
}

PopulationReport SlabPopulation(const SlabSpec& slab,
                                const OracleOptions& options) {
  const std::size_t n = slab.normal.size();
  CheckSize(n, options);
  if (slab.thickness_sq < 0) throw DomainError("slab thickness must be >= 0");
  if (slab.center && slab.center->size() != n) {
    throw DomainError("slab center has the wrong dimension");
  }
  // x is in the slab iff v = b S^T x - a satisfies v^2 <= Q with
  // a/b = S^T C and Q = (delta^2 / 4) ||S||^2 b^2. As v is an integer this
  // is |v| <= m with m = isqrt(floor(Q)), an integer range for S^T x.
  Rational plane = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Rational c = slab.center ? (*slab.center)[i] : Rational(1, 2);
    plane += Rational(slab.normal[i]) * c;
  }
  const BigInt a = plane.get_num();
  const BigInt b = plane.get_den();
  const Rational q = slab.thickness_sq / 4 * Rational(SquaredNorm(slab.normal)) *
                     Rational(BigInt(b * b));
  const BigInt m = Isqrt(Floor(q));
  const BigInt lo = Ceil(Rational(a - m, b));
  const BigInt hi = Floor(Rational(a + m, b));
  if (FitsWord(lo) && FitsWord(hi) && FitsWord(Sum(slab.normal))) {
    return CountRange<std::int64_t>(slab.normal, lo, hi, options);
  }
  return CountRange<BigInt>(slab.normal, lo, hi, options);
}

Rational EvalL0(std::span<const std::uint8_t> x, std::span<const Shell> shells) {
  Rational total = 0;
  for (const Shell& shell : shells) {
    const Rational r = ShellResidual(x, shell);
    total += r * r;
  }
  return total;
}

L0Minimum MinVertexL0(std::span<const Shell> shells,
                      const OracleOptions& options) {
  if (shells.empty()) throw DomainError("no shells given");
  const std::size_t n = shells.front().center.size();
  CheckSize(n, options);
  struct State {
    std::optional<Rational> best;
    Vertex argmin;
  };
  const std::vector<BigInt> zeros(n, BigInt(0));
  auto states = Walk<std::int64_t, State>(
      zeros, options.threads, [] { return State{}; },
      [&](State& st, const Vertex& x, std::int64_t) {
        Rational v = EvalL0(x, shells);
        if (!st.best || v < *st.best) {
          st.best = std::move(v);
          st.argmin = x;
        }
      });
  L0Minimum out;
  bool have = false;
  for (auto& st : states) {
    if (st.best && (!have || *st.best < out.value)) {
      out.value = *st.best;
      out.argmin = st.argmin;
      have = true;
    }
  }
  return out;
}

}  // namespace slabsum
