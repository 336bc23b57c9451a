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

// Slabs of the unit hypercube and the two-alternative slab decision.
//
// The slab S(S, C, delta) is the set of points within delta/2 of the
// hyperplane with normal S through C. Thicknesses are carried squared so
// that every certificate stays rational.

#ifndef SLABSUM_SLAB_H_
#define SLABSUM_SLAB_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "slabsum/dp.h"
#include "slabsum/geometry.h"
#include "slabsum/instance.h"
#include "slabsum/numerics.h"
#include "slabsum/quantize.h"

namespace slabsum {

struct SlabSpec {
  std::vector<BigInt> normal;
  // nullopt is the hypercube center 1/2 * 1_n.
  std::optional<Point> center;
  Rational thickness_sq;  // delta^2
};

// |S^T (x - C)|^2 <= (delta/2)^2 ||S||^2, exact.
bool SlabContains(const SlabSpec& slab, std::span<const std::uint8_t> x);
bool SlabContains(const SlabSpec& slab, std::span<const Rational> x);

// (S^T (x - C))^2 / ||S||^2, the squared distance to the hyperplane.
Rational SquaredHyperplaneDistance(const SlabSpec& slab,
                                   std::span<const std::uint8_t> x);

struct EmptyInner {
  Rational inner_thickness_sq;  // (2 d*)^2
};

struct VertexFound {
  Vertex x;
  BigInt tau;  // quantized target that produced x
  BigInt t;    // tau - floor(sum(u) / 2)
  Rational outer_thickness_sq;  // (8 d*)^2
  Rational rel_error;           // |S^T x / (sum(s)/2) - 1|
  Rational distance_sq;         // squared distance of x to the central plane
  bool in_outer_slab = false;
  bool within_quality_bound = false;  // rel_error <= 2n/N
};

struct SlabVerdict {
  std::variant<EmptyInner, VertexFound> outcome;
  BigInt big_n;
  std::optional<int> exponent;
  Rational cos_sq;
  Rational d_star_sq;
  Rational quality_bound;  // 2n/N
  std::size_t targets_scanned = 0;
  BigInt table_cells = 0;
  // A found vertex missed the outer slab or the quality bound.
  bool anomaly = false;

  bool vertex_found() const {
    return std::holds_alternative<VertexFound>(outcome);
  }
  const VertexFound* found() const { return std::get_if<VertexFound>(&outcome); }
};

struct DecideOptions {
  int threads = 1;
  DpOptions dp;
  // Scan every target of the window instead of stopping at the first hit.
  // The verdict is the same; only the amount of work changes.
  bool full_scan = false;
};

SlabVerdict DecideQuantized(const PartitionInstance& instance,
                            const QuantizedNormal& q,
                            const DecideOptions& options = {});
// N = n^c.
SlabVerdict Decide(const PartitionInstance& instance, int c,
                   const DecideOptions& options = {});
// Any integer scale N.
SlabVerdict DecideWithScale(const PartitionInstance& instance,
                            const BigInt& big_n,
                            const DecideOptions& options = {});

// ceil(n / epsilon), raised if needed until no quantized entry is zero.
BigInt ScaleForEpsilon(const PartitionInstance& instance,
                       const Rational& epsilon);
// Throws ResourceError naming N when the tables would not fit the budget.
SlabVerdict DecideEpsilon(const PartitionInstance& instance,
                          const Rational& epsilon,
                          const DecideOptions& options = {});

std::string VerdictToJson(const SlabVerdict& verdict);

// Solves many slabs {x : lo <= W^T x <= hi} sharing one positive integer
// normal W. W is quantized once at scale N and a single table over all sums
// is kept; each query scans the quantized targets that any vertex of the
// slab can map to.
class WindowSlabSolver {
 public:
  WindowSlabSolver(std::vector<BigInt> normal, const BigInt& big_n,
                   const DpOptions& options = {});

  struct Hit {
    Vertex x;
    bool inside = false;  // lo <= W^T x <= hi holds exactly
  };

  // First vertex found lying exactly in [lo, hi], else the first vertex of
  // the scanned targets, else nullopt (then no vertex lies in [lo, hi]).
  std::optional<Hit> Solve(const Rational& lo, const Rational& hi) const;

  const QuantizedNormal& quantized() const { return q_; }
  const std::vector<BigInt>& normal() const { return normal_; }

 private:
  std::vector<BigInt> normal_;
  QuantizedNormal q_;
  SubsetSumTable table_;
};

}  // namespace slabsum

#endif  // SLABSUM_SLAB_H_
