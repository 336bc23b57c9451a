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

// Simultaneous subset sum through spherical shells.
//
// Each constraint S_i^T (x - C) = 0, C = 1/2 * 1, becomes a shell around
// C_i = C - k_i S_i with k_i ~ rho / ||S_i|| and R_i^2 = k_i^2 ||S_i||^2 + n/4.
// On vertices ||x - C||^2 = n/4, so the shell residual is exactly
//
//   r_i(x) = ||x - C_i||^2 - R_i^2 = 2 k_i S_i^T (x - C).
//
// Shells are merged pairwise, (1,2), (3,4), ..., then pairs of pairs, into
// one root shell. With r_L + r_R = 2 r_parent and M = 2 r_L r_R per pair,
//
//   L0(x) = sum_i r_i(x)^2 = 4^K r_root(x)^2 - sum_q 4^q Mq(x),  K = log2 p,
//
// where Mq sums M over the pairs merged at level q. The solver guesses each
// Mq on a grid, and for each guess and each B ~ ||x - C_root|| + R_root
// solves one slab problem for the root residual. Candidates are accepted
// only after exact checks.

#ifndef SLABSUM_SSSP_H_
#define SLABSUM_SSSP_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slabsum/dp.h"
#include "slabsum/geometry.h"
#include "slabsum/instance.h"
#include "slabsum/numerics.h"

namespace slabsum {

// k_i as a dyadic rational >= rho / ||S_i|| within 2^-64.
Rational ShellScale(std::span<const BigInt> row, const Rational& rho);

// One shell per row, half thickness delta / 2.
std::vector<Shell> BuildShells(const SsspInstance& instance);

// max over vertices of |r_i(x)| = k_i * sum(S_i).
std::vector<Rational> LeafResidualBounds(const SsspInstance& instance);

struct MergeNode {
  Point center;
  Rational radius_sq;
  int level = 0;  // 0 for the input shells
  int left = -1;
  int right = -1;
  Rational residual_bound;  // bound on |r(x)| over vertices, 0 if unknown
};

struct MergeTree {
  std::vector<MergeNode> nodes;
  // levels[q] lists the node ids at level q, in order; levels.back() holds
  // the root alone.
  std::vector<std::vector<int>> levels;

  int root() const { return levels.back().front(); }
  // K = log2 p, the number of merge levels.
  int depth() const { return static_cast<int>(levels.size()) - 1; }
};

// p must be a power of two. leaf_bounds is empty or has one entry per shell.
MergeTree BuildMergeTree(std::span<const Shell> shells,
                         std::span<const Rational> leaf_bounds = {});

// The center and squared radius of the sphere merging two spheres.
MergeNode MergePair(const MergeNode& left, const MergeNode& right);

// Residual of every node at x.
std::vector<Rational> NodeResiduals(const MergeTree& tree,
                                    std::span<const Rational> x);
std::vector<Rational> NodeResiduals(const MergeTree& tree,
                                    std::span<const std::uint8_t> x);

// M_q(x) for q = 0 .. K-1.
std::vector<Rational> LevelCorrections(const MergeTree& tree,
                                       std::span<const Rational> x);
std::vector<Rational> LevelCorrections(const MergeTree& tree,
                                       std::span<const std::uint8_t> x);

// 4^K r_root(x)^2 - sum_q 4^q m[q].
Rational TelescopedL0(const MergeTree& tree, std::span<const Rational> x,
                      std::span<const Rational> m);
Rational TelescopedL0(const MergeTree& tree, std::span<const std::uint8_t> x,
                      std::span<const Rational> m);

struct LevelGrid {
  Rational bound;  // |M_q| over vertices never exceeds this
  Rational step;   // delta / (4^q K)
  std::uint64_t half_count = 0;  // J: values are j * step, |j| <= J

  std::uint64_t size() const { return 2 * half_count + 1; }
  Rational Value(std::uint64_t index) const;
};

struct CorrectionGrid {
  std::vector<LevelGrid> levels;
};

// Requires residual bounds on the tree nodes.
CorrectionGrid BuildCorrectionGrid(const MergeTree& tree, const Rational& delta);

struct SsspOptions {
  // Step of the B grid; default delta / (8 B_U).
  std::optional<Rational> epsilon_b;
  std::uint64_t max_leaves = 10'000'000;
  // Leaf slabs are quantized at N = n^leaf_exponent.
  int leaf_exponent = 4;
  int threads = 1;
  DpOptions dp;
};

struct SsspCertificate {
  Vertex x;
  std::vector<Rational> m;  // chosen grid value per level
  Rational b;
  Rational l0;  // exact L0(x)
  bool accepted = false;
};

struct SsspResult {
  std::optional<SsspCertificate> certificate;
  Rational curvature_term;  // n / (8 rho)
  Rational epsilon_b;
  Rational b_low;
  Rational b_high;
  BigInt grid_size = 0;  // (M, B) leaves in the full grid
  std::uint64_t leaves_visited = 0;
  std::uint64_t candidates_checked = 0;
};

// n / delta, which keeps the curvature term n / (8 rho) at delta / 8.
Rational DefaultRho(std::size_t n, const Rational& delta);

// Throws ResourceError when the grid exceeds options.max_leaves.
SsspResult SolveSssp(const SsspInstance& instance,
                     const SsspOptions& options = {});

std::string SsspResultToJson(const SsspResult& result);

}  // namespace slabsum

#endif  // SLABSUM_SSSP_H_
