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

// Pseudo-polynomial subset-sum dynamic program over bitsets.
//
// reachable[0][0] = true, reachable[0][s > 0] = false and
// reachable[k][s] = reachable[k-1][s] || (s >= u_k && reachable[k-1][s-u_k]).
//
// Reconstruction walks k = n..1 and takes item k whenever the remaining sum
// minus u_k is reachable from the first k-1 items, so among all solutions the
// one using the latest items is returned (u = [1, 1, 2], tau = 2 -> [0, 0, 1]).

#ifndef SLABSUM_DP_H_
#define SLABSUM_DP_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "slabsum/instance.h"
#include "slabsum/numerics.h"
#include "slabsum/quantize.h"

namespace slabsum {

// Reads SLABSUM_BUDGET_CELLS, falling back to 10^10 cells.
std::uint64_t DefaultCellBudget();

struct DpOptions {
  // Upper bound on (n + 1) * (tau + 1) for a single table.
  std::uint64_t max_cells = DefaultCellBudget();
};

// Cells a table for these items and this target would need.
BigInt TableCells(std::size_t n, const BigInt& tau);

// Some x with u^T x = tau, or nullopt. Memory is one rolling row plus about
// sqrt(n) checkpoint rows. Throws ResourceError over budget.
std::optional<Vertex> DpDecide(std::span<const BigInt> u, const BigInt& tau,
                               const DpOptions& options = {});

// Every row of the table up to sums <= cap, kept in memory so arbitrary
// sums can be queried and reconstructed. Used where many targets share one
// item list.
class SubsetSumTable {
 public:
  SubsetSumTable(std::span<const BigInt> u, const BigInt& cap,
                 const DpOptions& options = {});

  std::size_t n() const { return items_.size(); }
  std::uint64_t cap() const { return cap_; }

  bool Reachable(std::size_t k, std::uint64_t sum) const;
  bool Reachable(std::uint64_t sum) const { return Reachable(n(), sum); }
  std::optional<Vertex> Reconstruct(std::uint64_t sum) const;

 private:
  std::vector<std::uint64_t> items_;
  std::uint64_t cap_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> rows_;  // (n + 1) rows of words_ words
};

// Integer targets tau within n of sum(u)/2:
// {ceil(sum/2) - n, ..., floor(sum/2) + n}, clipped to [0, sum].
struct TargetWindow {
  BigInt sum_u;
  BigInt lo;
  BigInt hi;

  std::size_t size() const;
  // t = tau - floor(sum_u / 2).
  BigInt Offset(const BigInt& tau) const { return tau - sum_u / 2; }
};
TargetWindow MakeTargetWindow(const BigInt& sum_u, std::size_t n);

// Window indices ordered by |2 tau - sum_u|, lower tau first on ties.
std::vector<std::size_t> CenterOutOrder(const TargetWindow& window);

struct FamilyEntry {
  BigInt tau;
  BigInt t;
  bool scanned = false;
  std::optional<Vertex> x;
};

struct FamilyOptions {
  // Stop at the first solvable target in center-out order.
  bool first_hit_only = false;
  int threads = 1;
  DpOptions dp;
};

struct FamilyResult {
  std::vector<FamilyEntry> entries;  // window order (ascending tau)
  std::size_t targets_scanned = 0;
  BigInt table_cells = 0;            // summed over scanned targets
  // Index into `entries` of the preferred hit: the first one in center-out
  // order.
  std::optional<std::size_t> best_hit;
};

// Runs one independent DP per target of the window around sum(u)/2. Targets
// are distributed over `threads` workers; the result does not depend on the
// thread count.
FamilyResult SolveFamily(std::span<const BigInt> u, const FamilyOptions& options);
FamilyResult SolveFamily(const QuantizedNormal& q, const FamilyOptions& options);

}  // namespace slabsum

#endif  // SLABSUM_DP_H_
