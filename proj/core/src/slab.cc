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

#include "slabsum/slab.h"

#include <algorithm>
#include <utility>

#include "json_util.h"
#include "slabsum/errors.h"

namespace slabsum {

namespace {

using internal::Dump;
using internal::Json;
using internal::RationalToJson;
using internal::VertexToJson;

// S^T (x - C) with C the explicit center or 1/2 * 1_n.
template <typename Coord>
Rational Offset(const SlabSpec& slab, std::span<const Coord> x) {
  if (x.size() != slab.normal.size()) {
    throw DomainError("point and slab normal differ in dimension");
  }
  if (slab.center && slab.center->size() != x.size()) {
    throw DomainError("slab center has the wrong dimension");
  }
  Rational out = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Rational c = slab.center ? (*slab.center)[i] : Rational(1, 2);
    out += Rational(slab.normal[i]) * (Rational(x[i]) - c);
  }
  return out;
}

Rational Coordinate(std::uint8_t bit) {
  return Rational(static_cast<unsigned long>(bit));
}

Rational OffsetOf(const SlabSpec& slab, std::span<const std::uint8_t> x) {
  std::vector<Rational> point;
  point.reserve(x.size());
  for (auto bit : x) point.push_back(Coordinate(bit));
  return Offset<Rational>(slab, point);
}

bool ContainsOffset(const SlabSpec& slab, const Rational& offset) {
  if (slab.thickness_sq < 0) throw DomainError("slab thickness must be >= 0");
  const Rational norm_sq(SquaredNorm(slab.normal));
  return offset * offset * 4 <= slab.thickness_sq * norm_sq;
}

// Smallest N with N^2 min(s)^2 >= ||S||^2, so that no entry floors to 0.
BigInt MinScaleWithoutUnderflow(std::span<const BigInt> weights) {
  const BigInt norm_sq = SquaredNorm(weights);
  const BigInt min_s = *std::min_element(weights.begin(), weights.end());
  const BigInt min_sq = min_s * min_s;
  const BigInt ratio = (norm_sq + min_sq - 1) / min_sq;
  BigInt n = Isqrt(ratio);
  if (n * n < ratio) ++n;
  return n;
}

}  // namespace

bool SlabContains(const SlabSpec& slab, std::span<const std::uint8_t> x) {
  return ContainsOffset(slab, OffsetOf(slab, x));
}

bool SlabContains(const SlabSpec& slab, std::span<const Rational> x) {
  return ContainsOffset(slab, Offset<Rational>(slab, x));
}

Rational SquaredHyperplaneDistance(const SlabSpec& slab,
                                   std::span<const std::uint8_t> x) {
  const Rational offset = OffsetOf(slab, x);
  return offset * offset / Rational(SquaredNorm(slab.normal));
}

SlabVerdict DecideQuantized(const PartitionInstance& instance,
                            const QuantizedNormal& q,
                            const DecideOptions& options) {
  const std::size_t n = instance.weights.size();
  if (q.n() != n) throw DomainError("quantized normal has the wrong size");

  FamilyOptions family_options;
  family_options.first_hit_only = !options.full_scan;
  family_options.threads = options.threads;
  family_options.dp = options.dp;
  const FamilyResult family = SolveFamily(q, family_options);

  SlabVerdict verdict;
  verdict.big_n = q.big_n;
  verdict.exponent = q.exponent;
  verdict.cos_sq = q.cos_sq;
  verdict.d_star_sq = q.d_star_sq;
  verdict.quality_bound =
      Rational(BigInt(2 * static_cast<unsigned long>(n)), q.big_n);
  verdict.quality_bound.canonicalize();
  verdict.targets_scanned = family.targets_scanned;
  verdict.table_cells = family.table_cells;

  if (!family.best_hit) {
    verdict.outcome = EmptyInner{4 * q.d_star_sq};
    return verdict;
  }

  const FamilyEntry& entry = family.entries[*family.best_hit];
  VertexFound found;
  found.x = *entry.x;
  found.tau = entry.tau;
  found.t = entry.t;
  found.outer_thickness_sq = 64 * q.d_star_sq;

  const BigInt twice_offset = 2 * WeightOf(instance.weights, found.x) - q.sum_s;
  const BigInt abs_offset = abs(twice_offset);
  found.rel_error = Rational(abs_offset, q.sum_s);
  found.rel_error.canonicalize();
  found.distance_sq = Rational(BigInt(twice_offset * twice_offset),
                               BigInt(4 * q.norm_s_sq));
  found.distance_sq.canonicalize();
  // |S^T (x - C)| <= (8 d*/2) ||S||  <=>  (2 S^T x - sum)^2 <= 64 d*^2 ||S||^2.
  found.in_outer_slab = Rational(twice_offset * twice_offset) <=
                        found.outer_thickness_sq * Rational(q.norm_s_sq);
  found.within_quality_bound = found.rel_error <= verdict.quality_bound;
  verdict.anomaly = !(found.in_outer_slab && found.within_quality_bound);
  verdict.outcome = std::move(found);
  return verdict;
}

SlabVerdict Decide(const PartitionInstance& instance, int c,
                   const DecideOptions& options) {
  instance.Validate();
  return DecideQuantized(instance, QuantizeWithExponent(instance, c), options);
}

SlabVerdict DecideWithScale(const PartitionInstance& instance,
                            const BigInt& big_n, const DecideOptions& options) {
  instance.Validate();
  return DecideQuantized(instance, Quantize(instance.weights, big_n), options);
}

BigInt ScaleForEpsilon(const PartitionInstance& instance,
                       const Rational& epsilon) {
  if (epsilon <= 0 || epsilon >= 1) {
    throw DomainError("epsilon must lie in (0, 1)");
  }
  instance.Validate();
  const BigInt n(static_cast<unsigned long>(instance.weights.size()));
  const BigInt from_epsilon = Ceil(Rational(Rational(n) / epsilon));
  return std::max(from_epsilon, MinScaleWithoutUnderflow(instance.weights));
}

SlabVerdict DecideEpsilon(const PartitionInstance& instance,
                          const Rational& epsilon,
                          const DecideOptions& options) {
  const BigInt big_n = ScaleForEpsilon(instance, epsilon);
  const QuantizedNormal q = Quantize(instance.weights, big_n);
  const TargetWindow window = MakeTargetWindow(q.sum_u, q.n());
  const BigInt cells = TableCells(q.n(), window.hi);
  if (cells > BigInt(std::to_string(options.dp.max_cells))) {
    throw ResourceError("epsilon " + epsilon.get_str() + " requires N = " +
                        ToDecimal(big_n) + " needs " + ToDecimal(cells) +
                        " DP cells per target, budget is " +
                        std::to_string(options.dp.max_cells));
  }
  return DecideQuantized(instance, q, options);
}

std::string VerdictToJson(const SlabVerdict& verdict) {
  Json out = Json::object();
  const VertexFound* found = verdict.found();
  out["verdict"] = found ? "vertex_found" : "empty_inner";
  if (found) {
    out["x"] = VertexToJson(found->x);
    out["t"] = found->t.get_si();  // |t| <= n
    out["tau"] = ToDecimal(found->tau);
  } else {
    out["x"] = Json::array();
    out["t"] = nullptr;
    out["tau"] = nullptr;
  }
  out["d_star_sq"] = RationalToJson(verdict.d_star_sq);
  out["rel_error"] = found ? RationalToJson(found->rel_error) : Json(nullptr);
  out["targets_scanned"] = verdict.targets_scanned;
  out["anomaly"] = verdict.anomaly;
  out["N"] = ToDecimal(verdict.big_n);
  out["c"] = verdict.exponent ? Json(*verdict.exponent) : Json(nullptr);
  out["cos_sq"] = RationalToJson(verdict.cos_sq);
  if (found) {
    out["outer_thickness_sq"] = RationalToJson(found->outer_thickness_sq);
    out["distance_sq"] = RationalToJson(found->distance_sq);
    out["in_outer_slab"] = found->in_outer_slab;
  } else {
    out["inner_thickness_sq"] =
        RationalToJson(std::get<EmptyInner>(verdict.outcome).inner_thickness_sq);
  }
  out["quality_bound"] = RationalToJson(verdict.quality_bound);
  out["table_cells"] = ToDecimal(verdict.table_cells);
  return Dump(out);
}

WindowSlabSolver::WindowSlabSolver(std::vector<BigInt> normal,
                                   const BigInt& big_n,
                                   const DpOptions& options)
    : normal_(std::move(normal)),
      q_(Quantize(normal_, std::max(big_n, MinScaleWithoutUnderflow(normal_)))),
      table_(q_.u, q_.sum_u, options) {}

std::optional<WindowSlabSolver::Hit> WindowSlabSolver::Solve(
    const Rational& lo, const Rational& hi) const {
  if (hi < lo) return std::nullopt;
  // u_k = N w_k / ||W|| - f_k with 0 <= f_k < 1, so for W^T x in [lo, hi]:
  //   U^T x <= N hi / ||W||
  //   U^T x >= N (lo - sum W) / ||W|| + sum U.
  const Rational scale(q_.big_n);
  BigInt tau_hi = FloorDivSqrt(Rational(scale * hi), q_.norm_s_sq);
  BigInt tau_lo =
      CeilDivSqrt(Rational(scale * (lo - Rational(q_.sum_s))), q_.norm_s_sq) +
      q_.sum_u;
  tau_lo = std::max(tau_lo, BigInt(0));
  tau_hi = std::min(tau_hi, q_.sum_u);
  if (tau_hi < tau_lo) return std::nullopt;

  const std::uint64_t first = ToUint64(tau_lo);
  const std::uint64_t last = ToUint64(tau_hi);
  const std::uint64_t mid = first + (last - first) / 2;
  std::optional<Hit> fallback;
  auto visit = [&](std::uint64_t tau) -> bool {
    if (!table_.Reachable(tau)) return false;
    Vertex x = *table_.Reconstruct(tau);
    const Rational value(WeightOf(normal_, x));
    if (lo <= value && value <= hi) {
      fallback = Hit{std::move(x), true};
      return true;
    }
    if (!fallback) fallback = Hit{std::move(x), false};
    return false;
  };
  for (std::uint64_t k = 0;; ++k) {
    const bool below = k <= mid - first;
    const bool above = k <= last - mid;
    if (!below && !above) break;
    if (below && visit(mid - k)) return fallback;
    if (k > 0 && above && visit(mid + k)) return fallback;
  }
  return fallback;
}

}  // namespace slabsum
