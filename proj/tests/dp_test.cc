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

#include "slabsum/dp.h"

#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "slabsum/errors.h"
#include "slabsum/geometry.h"

namespace slabsum {
namespace {

std::vector<BigInt> Items(std::initializer_list<int> values) {
  std::vector<BigInt> out;
  for (int v : values) out.emplace_back(v);
  return out;
}

// All subset sums of small integer items.
std::vector<bool> BruteReachable(const std::vector<BigInt>& u) {
  std::uint64_t total = 0;
  for (const BigInt& v : u) total += v.get_ui();
  std::vector<bool> reach(total + 1, false);
  const std::size_t n = u.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::uint64_t s = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if ((mask >> k) & 1) s += u[k].get_ui();
    }
    reach[s] = true;
  }
  return reach;
}

TEST(DpDecideTest, TieBreakTakesLatestItems) {
  const auto x = DpDecide(Items({1, 1, 2}), BigInt(2));
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, (Vertex{0, 0, 1}));
}

TEST(DpDecideTest, Unreachable) {
  EXPECT_FALSE(DpDecide(Items({3, 5}), BigInt(4)));
  EXPECT_FALSE(DpDecide(Items({3, 5}), BigInt(9)));
  EXPECT_FALSE(DpDecide(Items({3, 5}), BigInt(-1)));
  EXPECT_TRUE(DpDecide(Items({3, 5}), BigInt(0)));
}

TEST(DpDecideTest, AgreesWithBruteForce) {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<BigInt> u;
    for (int k = 0; k < 16; ++k) {
      u.emplace_back(static_cast<unsigned long>(rng() % 256 + 1));
    }
    const std::vector<bool> reach = BruteReachable(u);
    for (std::size_t tau = 0; tau < reach.size(); ++tau) {
      const auto x = DpDecide(u, BigInt(static_cast<unsigned long>(tau)));
      ASSERT_EQ(x.has_value(), reach[tau]) << "tau " << tau;
      if (x) EXPECT_EQ(WeightOf(u, *x), tau);
    }
  }
}

TEST(DpDecideTest, WordBoundaryShifts) {
  // Items that are multiples of 64 exercise the whole-word shift path.
  const auto u = Items({64, 128, 63, 65, 1});
  const std::vector<bool> reach = BruteReachable(u);
  for (std::size_t tau = 0; tau < reach.size(); ++tau) {
    EXPECT_EQ(DpDecide(u, BigInt(static_cast<unsigned long>(tau))).has_value(),
              reach[tau]);
  }
}

TEST(DpDecideTest, BudgetIsEnforced) {
  DpOptions tiny;
  tiny.max_cells = 10;
  EXPECT_THROW(DpDecide(Items({5, 6, 7}), BigInt(9), tiny), ResourceError);
  EXPECT_EQ(TableCells(3, BigInt(9)), 40);
}

TEST(SubsetSumTableTest, RowsFollowRecurrence) {
  const auto u = Items({2, 3, 7, 7, 1});
  const SubsetSumTable table(u, Sum(u));
  EXPECT_TRUE(table.Reachable(0, 0));
  for (std::uint64_t s = 1; s <= table.cap(); ++s) EXPECT_FALSE(table.Reachable(0, s));
  for (std::size_t k = 1; k <= u.size(); ++k) {
    const std::uint64_t item = u[k - 1].get_ui();
    for (std::uint64_t s = 0; s <= table.cap(); ++s) {
      const bool expected = table.Reachable(k - 1, s) ||
                            (s >= item && table.Reachable(k - 1, s - item));
      EXPECT_EQ(table.Reachable(k, s), expected) << k << "," << s;
    }
  }
  for (std::uint64_t s = 0; s <= table.cap(); ++s) {
    const auto x = table.Reconstruct(s);
    if (x) EXPECT_EQ(WeightOf(u, *x), s);
  }
}

TEST(TargetWindowTest, ParallelFixture) {
  const TargetWindow w = MakeTargetWindow(BigInt(14), 2);
  EXPECT_EQ(w.lo, 5);
  EXPECT_EQ(w.hi, 9);
  EXPECT_EQ(w.size(), 5u);
  EXPECT_EQ(w.Offset(BigInt(6)), -1);
}

TEST(TargetWindowTest, OddSumAndClipping) {
  const TargetWindow w = MakeTargetWindow(BigInt(7), 2);
  // ceil(3.5) - 2 = 2 ... floor(3.5) + 2 = 5
  EXPECT_EQ(w.lo, 2);
  EXPECT_EQ(w.hi, 5);
  const TargetWindow clipped = MakeTargetWindow(BigInt(3), 4);
  EXPECT_EQ(clipped.lo, 0);
  EXPECT_EQ(clipped.hi, 3);
  EXPECT_LE(clipped.size(), 2u * 4 + 2);
}

TEST(TargetWindowTest, CenterOutOrder) {
  const TargetWindow w = MakeTargetWindow(BigInt(14), 2);
  std::vector<BigInt> taus;
  for (std::size_t i : CenterOutOrder(w)) taus.push_back(w.lo + static_cast<unsigned long>(i));
  EXPECT_EQ(taus, Items({7, 6, 8, 5, 9}));
  const TargetWindow odd = MakeTargetWindow(BigInt(7), 1);
  taus.clear();
  for (std::size_t i : CenterOutOrder(odd)) taus.push_back(odd.lo + static_cast<unsigned long>(i));
  EXPECT_EQ(taus, Items({3, 4}));
}

TEST(SolveFamilyTest, ParallelFixtureAllTargets) {
  const FamilyResult r = SolveFamily(Items({6, 8}), FamilyOptions{});
  ASSERT_EQ(r.entries.size(), 5u);
  EXPECT_EQ(r.targets_scanned, 5u);
  for (const FamilyEntry& e : r.entries) {
    EXPECT_TRUE(e.scanned);
    if (e.tau == 6) {
      ASSERT_TRUE(e.x);
      EXPECT_EQ(*e.x, (Vertex{1, 0}));
    } else if (e.tau == 8) {
      ASSERT_TRUE(e.x);
      EXPECT_EQ(*e.x, (Vertex{0, 1}));
    } else {
      EXPECT_FALSE(e.x);
    }
  }
  ASSERT_TRUE(r.best_hit);
  EXPECT_EQ(r.entries[*r.best_hit].tau, 6);
}

TEST(SolveFamilyTest, FirstHitStopsAndIsThreadIndependent) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<BigInt> u;
    for (int k = 0; k < 12; ++k) u.emplace_back(static_cast<unsigned long>(rng() % 500 + 1));
    FamilyOptions one;
    one.first_hit_only = true;
    FamilyOptions many = one;
    many.threads = 4;
    const FamilyResult a = SolveFamily(u, one);
    const FamilyResult b = SolveFamily(u, many);
    EXPECT_EQ(a.targets_scanned, b.targets_scanned);
    EXPECT_EQ(a.best_hit, b.best_hit);
    EXPECT_EQ(a.table_cells, b.table_cells);
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
      EXPECT_EQ(a.entries[i].x, b.entries[i].x);
      EXPECT_EQ(a.entries[i].scanned, b.entries[i].scanned);
    }
  }
}

TEST(SolveFamilyTest, SymmetricInstanceHitsCenter) {
  const FamilyResult r = SolveFamily(Items({5, 5, 5, 5}), FamilyOptions{});
  ASSERT_TRUE(r.best_hit);
  EXPECT_EQ(r.entries[*r.best_hit].tau, 10);
}

}  // namespace
}  // namespace slabsum
