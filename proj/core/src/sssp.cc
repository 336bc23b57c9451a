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

#include "slabsum/sssp.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>

#include "json_util.h"
#include "parallel.h"
#include "slabsum/errors.h"
#include "slabsum/oracle.h"
#include "slabsum/quantize.h"
#include "slabsum/slab.h"

namespace slabsum {

namespace {

using internal::Json;

constexpr int kScaleBits = 64;

bool IsPowerOfTwo(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

Rational PowerOfFour(int e) {
  return Rational(BigInt(1) << (2 * e));
}

template <typename Coord>
std::vector<Rational> Residuals(const MergeTree& tree,
                                std::span<const Coord> x) {
  std::vector<Rational> out;
  out.reserve(tree.nodes.size());
  for (const MergeNode& node : tree.nodes) {
    out.push_back(ShellResidual(x, Shell{node.center, node.radius_sq, 0}));
  }
  return out;
}

std::vector<Rational> Corrections(const MergeTree& tree,
                                  const std::vector<Rational>& r) {
  std::vector<Rational> m;
  for (int q = 0; q < tree.depth(); ++q) {
    Rational sum = 0;
    for (int id : tree.levels[q + 1]) {
      const MergeNode& node = tree.nodes[id];
      sum += 2 * r[node.left] * r[node.right];
    }
    m.push_back(sum);
  }
  return m;
}

Rational Telescoped(const MergeTree& tree, const std::vector<Rational>& r,
                    std::span<const Rational> m) {
  const int k = tree.depth();
  if (static_cast<int>(m.size()) != k) {
    throw DomainError("need one correction per merge level");
  }
  const Rational& root = r[tree.root()];
  Rational out = PowerOfFour(k) * root * root;
  for (int q = 0; q < k; ++q) out -= PowerOfFour(q) * m[q];
  return out;
}

double SqrtOf(const Rational& v) { return std::sqrt(std::max(0.0, ToDouble(v))); }

}  // namespace

Rational ShellScale(std::span<const BigInt> row, const Rational& rho) {
  if (rho <= 0) throw DomainError("rho must be > 0");
  const Rational unit(BigInt(1) << kScaleBits);
  const BigInt scaled = CeilDivSqrt(Rational(rho * unit), SquaredNorm(row));
  Rational out = Rational(scaled) / unit;
  out.canonicalize();
  return out;
}

std::vector<Shell> BuildShells(const SsspInstance& instance) {
  instance.Validate();
  const std::size_t n = instance.n();
  const Point center = CubeCenter(n);
  std::vector<Shell> shells;
  for (const auto& row : instance.weight_rows) {
    const Rational k = ShellScale(row, instance.rho);
    Shell shell;
    shell.center.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
      shell.center.push_back(center[j] - k * Rational(row[j]));
    }
    shell.radius_sq = k * k * Rational(SquaredNorm(row)) +
                      MakeRational(BigInt(static_cast<unsigned long>(n)), BigInt(4));
    shell.radius_sq.canonicalize();
    shell.half_thickness = instance.delta / 2;
    shells.push_back(std::move(shell));
  }
  return shells;
}

std::vector<Rational> LeafResidualBounds(const SsspInstance& instance) {
  instance.Validate();
  std::vector<Rational> out;
  for (const auto& row : instance.weight_rows) {
    out.push_back(ShellScale(row, instance.rho) * Rational(Sum(row)));
  }
  return out;
}

MergeNode MergePair(const MergeNode& left, const MergeNode& right) {
  if (left.center.size() != right.center.size()) {
    throw DomainError("cannot merge shells of different dimension");
  }
  MergeNode out;
  out.center.reserve(left.center.size());
  for (std::size_t j = 0; j < left.center.size(); ++j) {
    out.center.push_back((left.center[j] + right.center[j]) / 2);
  }
  out.radius_sq = (left.radius_sq + right.radius_sq) / 2 -
                  SquaredDistance(left.center, right.center) / 4;
  out.level = std::max(left.level, right.level) + 1;
  out.residual_bound = (left.residual_bound + right.residual_bound) / 2;
  return out;
}

MergeTree BuildMergeTree(std::span<const Shell> shells,
                         std::span<const Rational> leaf_bounds) {
  if (!IsPowerOfTwo(shells.size())) {
    throw DomainError("the number of shells must be a power of two, got " +
                      std::to_string(shells.size()));
  }
  if (!leaf_bounds.empty() && leaf_bounds.size() != shells.size()) {
    throw DomainError("need one residual bound per shell");
  }
  MergeTree tree;
  tree.levels.emplace_back();
  for (std::size_t i = 0; i < shells.size(); ++i) {
    MergeNode leaf;
    leaf.center = shells[i].center;
    leaf.radius_sq = shells[i].radius_sq;
    if (!leaf_bounds.empty()) leaf.residual_bound = leaf_bounds[i];
    tree.levels[0].push_back(static_cast<int>(tree.nodes.size()));
    tree.nodes.push_back(std::move(leaf));
  }
  while (tree.levels.back().size() > 1) {
    const std::vector<int> below = tree.levels.back();
    std::vector<int> above;
    for (std::size_t i = 0; i < below.size(); i += 2) {
      MergeNode node = MergePair(tree.nodes[below[i]], tree.nodes[below[i + 1]]);
      node.left = below[i];
      node.right = below[i + 1];
      above.push_back(static_cast<int>(tree.nodes.size()));
      tree.nodes.push_back(std::move(node));
    }
    tree.levels.push_back(std::move(above));
  }
  return tree;
}

std::vector<Rational> NodeResiduals(const MergeTree& tree,
                                    std::span<const Rational> x) {
  return Residuals<Rational>(tree, x);
}

std::vector<Rational> NodeResiduals(const MergeTree& tree,
                                    std::span<const std::uint8_t> x) {
  return Residuals<std::uint8_t>(tree, x);
}

std::vector<Rational> LevelCorrections(const MergeTree& tree,
                                       std::span<const Rational> x) {
  return Corrections(tree, NodeResiduals(tree, x));
}

std::vector<Rational> LevelCorrections(const MergeTree& tree,
                                       std::span<const std::uint8_t> x) {
  return Corrections(tree, NodeResiduals(tree, x));
}

Rational TelescopedL0(const MergeTree& tree, std::span<const Rational> x,
                      std::span<const Rational> m) {
  return Telescoped(tree, NodeResiduals(tree, x), m);
}

Rational TelescopedL0(const MergeTree& tree, std::span<const std::uint8_t> x,
                      std::span<const Rational> m) {
  return Telescoped(tree, NodeResiduals(tree, x), m);
}

Rational LevelGrid::Value(std::uint64_t index) const {
  if (index >= size()) throw DomainError("grid index out of range");
  const BigInt j = BigInt(std::to_string(index)) -
                   BigInt(std::to_string(half_count));
  return Rational(j) * step;
}

CorrectionGrid BuildCorrectionGrid(const MergeTree& tree,
                                   const Rational& delta) {
  if (delta <= 0) throw DomainError("delta must be > 0");
  const int k = tree.depth();
  CorrectionGrid grid;
  for (int q = 0; q < k; ++q) {
    LevelGrid level;
    level.bound = 0;
    for (int id : tree.levels[q + 1]) {
      const MergeNode& node = tree.nodes[id];
      level.bound += 2 * tree.nodes[node.left].residual_bound *
                     tree.nodes[node.right].residual_bound;
    }
    level.step = delta / (PowerOfFour(q) * k);
    level.step.canonicalize();
    level.half_count = ToUint64(Ceil(Rational(level.bound / level.step)));
    grid.levels.push_back(std::move(level));
  }
  return grid;
}

Rational DefaultRho(std::size_t n, const Rational& delta) {
  if (delta <= 0) throw DomainError("delta must be > 0");
  Rational out = Rational(static_cast<unsigned long>(n)) / delta;
  out.canonicalize();
  return out;
}

SsspResult SolveSssp(const SsspInstance& instance, const SsspOptions& options) {
  instance.Validate();
  const std::size_t n = instance.n();
  const std::size_t p = instance.p();
  const Rational& delta = instance.delta;

  const std::vector<Shell> shells = BuildShells(instance);
  const MergeTree tree = BuildMergeTree(shells, LeafResidualBounds(instance));
  const CorrectionGrid grid = BuildCorrectionGrid(tree, delta);
  const int depth = tree.depth();
  const MergeNode& root = tree.nodes[tree.root()];

  SsspResult result;
  result.curvature_term = Rational(static_cast<unsigned long>(n)) /
                          (8 * instance.rho);
  result.curvature_term.canonicalize();

  // On vertices r_root(x) = 2 v^T x - v^T 1 with v the mean of k_i S_i.
  // W = L * p * v is an integer normal, L the common denominator of the k_i.
  std::vector<Rational> scales;
  BigInt common = 1;
  for (const auto& row : instance.weight_rows) {
    scales.push_back(ShellScale(row, instance.rho));
    mpz_lcm(common.get_mpz_t(), common.get_mpz_t(),
            scales.back().get_den_mpz_t());
  }
  std::vector<BigInt> normal(n, BigInt(0));
  for (std::size_t i = 0; i < p; ++i) {
    const BigInt factor = scales[i].get_num() * (common / scales[i].get_den());
    for (std::size_t j = 0; j < n; ++j) {
      normal[j] += factor * instance.weight_rows[i][j];
    }
  }
  const Rational w_scale(BigInt(common * static_cast<unsigned long>(p)));
  const Rational v_sum = Rational(Sum(normal)) / w_scale;
  {
    const Vertex zero(n, 0);
    if (NodeResiduals(tree, zero)[tree.root()] != -v_sum) {
      throw Error("root residual is not affine on vertices");
    }
  }

  // B ~ ||x - C_root|| + R_root; ||x - C|| = sqrt(n)/2 on vertices.
  const Point cube_center = CubeCenter(n);
  const double half_diag = std::sqrt(static_cast<double>(n)) / 2;
  const double center_gap = SqrtOf(SquaredDistance(cube_center, root.center));
  const double radius = SqrtOf(root.radius_sq);
  const double b_low = std::abs(half_diag - center_gap) + radius;
  const double b_high = half_diag + center_gap + radius;
  result.epsilon_b = options.epsilon_b
                         ? *options.epsilon_b
                         : FromDouble(ToDouble(delta) / (8 * b_high));
  if (result.epsilon_b <= 0) throw DomainError("epsilon_B must be > 0");
  result.b_low = FromDouble(b_low) - result.epsilon_b;
  result.b_high = FromDouble(b_high) + result.epsilon_b;
  const BigInt b_steps =
      Floor(Rational((result.b_high - result.b_low) / result.epsilon_b)) + 1;

  result.grid_size = b_steps;
  for (const LevelGrid& level : grid.levels) {
    result.grid_size *= BigInt(std::to_string(level.size()));
  }
  if (result.grid_size > BigInt(std::to_string(options.max_leaves))) {
    throw ResourceError("SSSP grid has " + ToDecimal(result.grid_size) +
                        " leaves, budget is " +
                        std::to_string(options.max_leaves));
  }
  const std::uint64_t leaves = ToUint64(result.grid_size);
  const std::uint64_t b_count = ToUint64(b_steps);

  const WindowSlabSolver solver(normal,
                                PowerScale(n, options.leaf_exponent),
                                options.dp);
  const Rational five_delta = 5 * delta;
  const Rational three_delta = 3 * delta;
  const Rational two_delta = 2 * delta;
  const Rational top_scale = PowerOfFour(depth);

  struct LeafOutcome {
    bool candidate = false;
    std::optional<SsspCertificate> certificate;
  };

  auto validate = [&](const Vertex& x, const std::vector<Rational>& m,
                      const Rational& b) -> std::optional<SsspCertificate> {
    const Rational d_sq = SquaredDistance(ToPoint(x), root.center);
    if (CompareSqrtSum(d_sq, root.radius_sq, b + result.epsilon_b) > 0) {
      return std::nullopt;
    }
    const Rational lower = b - result.epsilon_b;
    if (lower > 0 && CompareSqrtSum(d_sq, root.radius_sq, lower) < 0) {
      return std::nullopt;
    }
    const std::vector<Rational> actual = LevelCorrections(tree, x);
    for (int q = 0; q < depth; ++q) {
      if (abs(Rational(actual[q] - m[q])) > grid.levels[q].step) {
        return std::nullopt;
      }
    }
    SsspCertificate cert;
    cert.l0 = EvalL0(x, shells);
    if (cert.l0 > five_delta) return std::nullopt;
    cert.x = x;
    cert.m = m;
    cert.b = b;
    cert.accepted = true;
    return cert;
  };

  auto solve_leaf = [&](std::uint64_t index) -> LeafOutcome {
    LeafOutcome outcome;
    const std::uint64_t b_index = index % b_count;
    std::uint64_t rest = index / b_count;
    std::vector<Rational> m(depth);
    for (int q = depth - 1; q >= 0; --q) {
      const std::uint64_t size = grid.levels[q].size();
      m[q] = grid.levels[q].Value(rest % size);
      rest /= size;
    }
    Rational shift = 0;
    for (int q = 0; q < depth; ++q) shift += PowerOfFour(q) * m[q];
    // Band -2 delta <= 4^K r^2 - shift <= 3 delta on the root residual.
    if (shift + three_delta < 0) return outcome;
    const Rational hi_sq = (shift + three_delta) / top_scale;
    Rational lo_sq = (shift - two_delta) / top_scale;
    if (lo_sq < 0) lo_sq = 0;
    const Rational b = result.b_low +
                       Rational(BigInt(std::to_string(b_index))) *
                           result.epsilon_b;
    const double bd = ToDouble(b);
    if (bd <= 0) return outcome;
    const double hi = SqrtOf(hi_sq) / bd;
    const double lo = SqrtOf(lo_sq) / bd;
    // r = e^2 + 2 R e for e = ||x - C_root|| - R, increasing for e > -R.
    auto r_of = [radius](double e) {
      e = std::max(e, -radius);
      return e * e + 2 * radius * e;
    };
    const double windows[2][2] = {{r_of(-hi), r_of(-lo)}, {r_of(lo), r_of(hi)}};
    for (const auto& window : windows) {
      const double slack = 1e-9 * (1 + std::abs(window[0]) + std::abs(window[1]));
      const Rational r_lo = FromDouble(window[0] - slack);
      const Rational r_hi = FromDouble(window[1] + slack);
      // v^T x = (r + v^T 1) / 2 and W^T x = w_scale v^T x.
      const Rational w_lo = (r_lo + v_sum) / 2 * w_scale;
      const Rational w_hi = (r_hi + v_sum) / 2 * w_scale;
      const auto hit = solver.Solve(w_lo, w_hi);
      if (!hit) continue;
      outcome.candidate = true;
      outcome.certificate = validate(hit->x, m, b);
      if (outcome.certificate) return outcome;
    }
    return outcome;
  };

  constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
  std::atomic<std::uint64_t> first{kNone};
  std::vector<std::uint8_t> had_candidate(leaves, 0);
  std::mutex found_mu;
  std::optional<SsspCertificate> best;
  internal::ParallelFor(leaves, options.threads, [&](std::size_t index) {
    if (index > first.load()) return;
    LeafOutcome outcome = solve_leaf(index);
    had_candidate[index] = outcome.candidate;
    if (!outcome.certificate) return;
    std::lock_guard<std::mutex> lock(found_mu);
    if (index < first.load()) {
      first.store(index);
      best = std::move(outcome.certificate);
    }
  });

  const std::uint64_t stop = first.load() == kNone ? leaves : first.load() + 1;
  result.leaves_visited = stop;
  for (std::uint64_t i = 0; i < stop; ++i) {
    result.candidates_checked += had_candidate[i];
  }
  result.certificate = std::move(best);
  return result;
}

std::string SsspResultToJson(const SsspResult& result) {
  Json out = Json::object();
  const auto& cert = result.certificate;
  out["found"] = cert.has_value();
  out["x"] = cert ? internal::VertexToJson(cert->x) : Json::array();
  Json m = Json::array();
  if (cert) {
    for (const Rational& v : cert->m) m.push_back(internal::RationalToJson(v));
  }
  out["M"] = std::move(m);
  out["B"] = cert ? internal::RationalToJson(cert->b) : Json(nullptr);
  out["L0"] = cert ? internal::RationalToJson(cert->l0) : Json(nullptr);
  out["curvature_term"] = internal::RationalToJson(result.curvature_term);
  out["grid_size"] = ToDecimal(result.grid_size);
  out["epsilon_b"] = internal::RationalToJson(result.epsilon_b);
  out["leaves_visited"] = result.leaves_visited;
  out["candidates_checked"] = result.candidates_checked;
  return internal::Dump(out);
}

}  // namespace slabsum
