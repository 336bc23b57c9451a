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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "parallel.h"
#include "slabsum/errors.h"

namespace slabsum {

namespace {

using Word = std::uint64_t;
constexpr unsigned kWordBits = 64;
constexpr std::uint64_t kDefaultCellBudget = 10'000'000'000ULL;

std::size_t WordsFor(std::uint64_t cap) {
  return static_cast<std::size_t>(cap / kWordBits + 1);
}

Word LastWordMask(std::uint64_t cap) {
  const unsigned used = static_cast<unsigned>(cap % kWordBits) + 1;
  return used == kWordBits ? ~Word{0} : (Word{1} << used) - 1;
}

bool TestBit(const Word* row, std::uint64_t bit) {
  return (row[bit / kWordBits] >> (bit % kWordBits)) & 1;
}

// row |= row << shift, truncated to the row width. Iterates from the high
// end so reads only see words that have not been updated yet.
void ShiftOrInPlace(Word* row, std::size_t words, std::uint64_t shift,
                    Word last_mask) {
  const std::uint64_t word_shift = shift / kWordBits;
  const unsigned bit_shift = static_cast<unsigned>(shift % kWordBits);
  if (word_shift >= words) return;
  const std::size_t ws = static_cast<std::size_t>(word_shift);
  if (bit_shift == 0) {
    if (ws == 0) return;
    for (std::size_t i = words - 1; i >= ws; --i) {
      row[i] |= row[i - ws];
      if (i == ws) break;
    }
  } else {
    for (std::size_t i = words - 1; i > ws; --i) {
      row[i] |= (row[i - ws] << bit_shift) |
                (row[i - ws - 1] >> (kWordBits - bit_shift));
    }
    row[ws] |= row[0] << bit_shift;
  }
  row[words - 1] &= last_mask;
}

// Items as machine words; anything larger than the cap can never be taken,
// so it is mapped to cap + 1.
std::vector<std::uint64_t> ItemsFor(std::span<const BigInt> u,
                                    std::uint64_t cap) {
  std::vector<std::uint64_t> items;
  items.reserve(u.size());
  for (const BigInt& v : u) {
    if (v < 0) throw DomainError("DP items must be non-negative");
    items.push_back(v > cap ? cap + 1 : ToUint64(v));
  }
  return items;
}

void CheckBudget(std::size_t n, const BigInt& tau, const DpOptions& options) {
  const BigInt cells = TableCells(n, tau);
  if (cells > BigInt(std::to_string(options.max_cells))) {
    throw ResourceError("DP table needs " + ToDecimal(cells) +
                        " cells, budget is " +
                        std::to_string(options.max_cells) +
                        " (SLABSUM_BUDGET_CELLS)");
  }
}

// Backtracks from `sum` through rows[k] = reachable after the first k items,
// for k in [first_row, first_row + rows.size()), setting x for the items
// first_row + 1 .. first_row + rows.size().
void BacktrackBlock(const std::vector<const Word*>& rows, std::size_t first_row,
                    std::span<const std::uint64_t> items, std::uint64_t& sum,
                    Vertex& x) {
  for (std::size_t k = first_row + rows.size(); k > first_row; --k) {
    const Word* prev = rows[k - 1 - first_row];
    const std::uint64_t item = items[k - 1];
    if (item <= sum && TestBit(prev, sum - item)) {
      x[k - 1] = 1;
      sum -= item;
    } else {
      x[k - 1] = 0;
    }
  }
}

}  // namespace

std::uint64_t DefaultCellBudget() {
  if (const char* env = std::getenv("SLABSUM_BUDGET_CELLS")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return value;
  }
  return kDefaultCellBudget;
}

BigInt TableCells(std::size_t n, const BigInt& tau) {
  return BigInt(static_cast<unsigned long>(n + 1)) * (tau + 1);
}

std::optional<Vertex> DpDecide(std::span<const BigInt> u, const BigInt& tau,
                               const DpOptions& options) {
  if (tau < 0 || tau > Sum(u)) return std::nullopt;
  const std::size_t n = u.size();
  CheckBudget(n, tau, options);
  const std::uint64_t cap = ToUint64(tau);
  const std::vector<std::uint64_t> items = ItemsFor(u, cap);
  const std::size_t words = WordsFor(cap);
  const Word mask = LastWordMask(cap);
  const std::size_t stride = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n)))));

  std::vector<Word> row(words, 0);
  row[0] = 1;
  // checkpoints[b] = row after b * stride items.
  std::vector<std::vector<Word>> checkpoints;
  for (std::size_t k = 0; k < n; ++k) {
    if (k % stride == 0) checkpoints.push_back(row);
    ShiftOrInPlace(row.data(), words, items[k], mask);
  }
  if (!TestBit(row.data(), cap)) return std::nullopt;

  Vertex x(n, 0);
  std::uint64_t sum = cap;
  std::vector<std::vector<Word>> block;
  for (std::size_t b = checkpoints.size(); b-- > 0;) {
    const std::size_t start = b * stride;
    const std::size_t end = std::min(n, start + stride);
    block.resize(end - start);
    block[0] = checkpoints[b];
    for (std::size_t j = 1; j < block.size(); ++j) {
      block[j] = block[j - 1];
      ShiftOrInPlace(block[j].data(), words, items[start + j - 1], mask);
    }
    std::vector<const Word*> rows;
    for (const auto& r : block) rows.push_back(r.data());
    BacktrackBlock(rows, start, items, sum, x);
  }
  if (sum != 0) throw Error("DP reconstruction did not reach sum 0");
  return x;
}

SubsetSumTable::SubsetSumTable(std::span<const BigInt> u, const BigInt& cap,
                               const DpOptions& options) {
  if (cap < 0) throw DomainError("table cap must be >= 0");
  CheckBudget(u.size(), cap, options);
  cap_ = ToUint64(cap);
  items_ = ItemsFor(u, cap_);
  words_ = WordsFor(cap_);
  const Word mask = LastWordMask(cap_);
  rows_.assign((items_.size() + 1) * words_, 0);
  rows_[0] = 1;
  for (std::size_t k = 1; k <= items_.size(); ++k) {
    Word* row = rows_.data() + k * words_;
    std::copy_n(row - words_, words_, row);
    ShiftOrInPlace(row, words_, items_[k - 1], mask);
  }
}

bool SubsetSumTable::Reachable(std::size_t k, std::uint64_t sum) const {
  if (k > n()) throw DomainError("row index out of range");
  if (sum > cap_) return false;
  return TestBit(rows_.data() + k * words_, sum);
}

std::optional<Vertex> SubsetSumTable::Reconstruct(std::uint64_t sum) const {
  if (!Reachable(sum)) return std::nullopt;
  std::vector<const Word*> rows;
  for (std::size_t k = 0; k < n(); ++k) rows.push_back(rows_.data() + k * words_);
  Vertex x(n(), 0);
  BacktrackBlock(rows, 0, items_, sum, x);
  return x;
}

std::size_t TargetWindow::size() const {
  if (hi < lo) return 0;
  return static_cast<std::size_t>(ToUint64(BigInt(hi - lo + 1)));
}

TargetWindow MakeTargetWindow(const BigInt& sum_u, std::size_t n) {
  const BigInt width(static_cast<unsigned long>(n));
  TargetWindow w;
  w.sum_u = sum_u;
  const BigInt floor_half = sum_u / 2;
  const BigInt ceil_half = sum_u - floor_half;
  w.lo = ceil_half - width;
  w.hi = floor_half + width;
  if (w.lo < 0) w.lo = 0;
  if (w.hi > sum_u) w.hi = sum_u;
  return w;
}

std::vector<std::size_t> CenterOutOrder(const TargetWindow& window) {
  const std::size_t size = window.size();
  std::vector<std::size_t> order(size);
  std::vector<BigInt> distance(size);
  for (std::size_t i = 0; i < size; ++i) {
    order[i] = i;
    const BigInt tau = window.lo + static_cast<unsigned long>(i);
    distance[i] = abs(BigInt(2 * tau - window.sum_u));
  }
  std::stable_sort(order.begin(), order.end(),
                   [&distance](std::size_t a, std::size_t b) {
                     return distance[a] < distance[b];
                   });
  return order;
}

FamilyResult SolveFamily(std::span<const BigInt> u,
                         const FamilyOptions& options) {
  const TargetWindow window = MakeTargetWindow(Sum(u), u.size());
  const std::vector<std::size_t> order = CenterOutOrder(window);

  FamilyResult result;
  result.entries.resize(window.size());
  for (std::size_t i = 0; i < result.entries.size(); ++i) {
    result.entries[i].tau = window.lo + static_cast<unsigned long>(i);
    result.entries[i].t = window.Offset(result.entries[i].tau);
  }

  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::atomic<std::size_t> first_hit{kNone};
  internal::ParallelFor(order.size(), options.threads, [&](std::size_t pos) {
    if (options.first_hit_only && pos > first_hit.load()) return;
    FamilyEntry& entry = result.entries[order[pos]];
    entry.x = DpDecide(u, entry.tau, options.dp);
    entry.scanned = true;
    if (entry.x) {
      std::size_t seen = first_hit.load();
      while (pos < seen && !first_hit.compare_exchange_weak(seen, pos)) {
      }
    }
  });

  const std::size_t hit = first_hit.load();
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    FamilyEntry& entry = result.entries[order[pos]];
    if (options.first_hit_only && pos > hit) {
      // Speculative work past the first hit is discarded so the result is
      // the same for every thread count.
      entry.scanned = false;
      entry.x.reset();
      continue;
    }
    ++result.targets_scanned;
    result.table_cells += TableCells(u.size(), entry.tau);
  }
  if (hit != kNone) result.best_hit = order[hit];
  return result;
}

FamilyResult SolveFamily(const QuantizedNormal& q,
                         const FamilyOptions& options) {
  return SolveFamily(q.u, options);
}

}  // namespace slabsum
