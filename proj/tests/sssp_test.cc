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

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "slabsum/errors.h"
#include "slabsum/oracle.h"

namespace slabsum {
namespace {

Vertex RandomVertex(std::mt19937_64& rng, std::size_t n) {
  Vertex x(n);
  for (auto& b : x) b = rng() & 1;
  return x;
}

Point RandomPoint(std::mt19937_64& rng, std::size_t n) {
  Point x;
  for (std::size_t k = 0; k < n; ++k) {
    x.emplace_back(static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 13 + 1));
    x.back().canonicalize();
  }
  return x;
}

Shell RandomShell(std::mt19937_64& rng, std::size_t n) {
  Shell s;
  s.center = RandomPoint(rng, n);
  s.radius_sq = Rational(static_cast<long>(rng() % 400), 7);
  s.radius_sq.canonicalize();
  return s;
}

SsspInstance MakeSssp(std::vector<std::vector<int>> rows, const Rational& rho,
                      const Rational& delta) {
  SsspInstance inst;
  for (const auto& row : rows) {
    inst.weight_rows.emplace_back(row.begin(), row.end());
  }
  inst.rho = rho;
  inst.delta = delta;
  return inst;
}

Rational Pow4(int e) { return Rational(BigInt(1) << (2 * e)); }

TEST(ShellTest, ScaleIsTightUpperApproximation) {
  const std::vector<BigInt> row = {BigInt(3), BigInt(4)};
  // rho / ||S|| = 7 / 5 is dyadic-rounded up.
  const Rational k = ShellScale(row, Rational(7));
  EXPECT_GE(k, Rational(7, 5));
  EXPECT_LE(k - Rational(7, 5), Rational(1, BigInt(1) << 63));
  EXPECT_THROW(ShellScale(row, Rational(0)), DomainError);
}

// With one shell the vertex residual is 2 k S^T (x - 1/2): zero exactly on
// the partition hyperplane.
TEST(ShellTest, VertexResidualIsAffine) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> row;
    for (int k = 0; k < 9; ++k) row.push_back(static_cast<int>(rng() % 30 + 1));
    const SsspInstance inst = MakeSssp({row, row}, Rational(50), Rational(1));
    const std::vector<Shell> shells = BuildShells(inst);
    const Rational k = ShellScale(inst.weight_rows[0], inst.rho);
    for (int v = 0; v < 30; ++v) {
      const Vertex x = RandomVertex(rng, 9);
      const BigInt dot = WeightOf(inst.weight_rows[0], x);
      const Rational expected = 2 * k * (Rational(dot) - Rational(Sum(inst.weight_rows[0])) / 2);
      EXPECT_EQ(ShellResidual(x, shells[0]), expected);
      EXPECT_EQ(ShellResidual(x, shells[0]) == 0,
                2 * dot == Sum(inst.weight_rows[0]));
    }
  }
}

// Near a vertex, the shell and the slab of half thickness delta / (2 k ||S||)
// agree up to the curvature term: r(x) - 2 k S^T (x - c) = ||x - c||^2 - n/4.
TEST(ShellTest, ShellToSlabGapOnRandomPoints) {
  std::mt19937_64 rng(12);
  const std::size_t n = 12;
  for (const double eps : {0.1, 0.5}) {
    std::vector<int> row;
    for (std::size_t k = 0; k < n; ++k) row.push_back(static_cast<int>(rng() % 100 + 1));
    const SsspInstance inst = MakeSssp({row, row}, Rational(1000), Rational(1));
    const Shell shell = BuildShells(inst)[0];
    const Rational k = ShellScale(inst.weight_rows[0], inst.rho);
    const Point c = CubeCenter(n);
    double worst = 0;
    for (int sample = 0; sample < 10000; ++sample) {
      Vertex v = RandomVertex(rng, n);
      Point x = ToPoint(v);
      // Perturb the vertex by at most eps per coordinate.
      for (std::size_t j = 0; j < n; ++j) {
        const double d = eps * (static_cast<double>(rng() % 2001) / 1000 - 1);
        x[j] += FromDouble(d);
      }
      Rational linear = 0;
      for (std::size_t j = 0; j < n; ++j) linear += Rational(inst.weight_rows[0][j]) * (x[j] - c[j]);
      const Rational gap = ShellResidual(x, shell) - 2 * k * linear -
                           (SquaredDistance(x, c) - Rational(static_cast<unsigned long>(n)) / 4);
      EXPECT_EQ(gap, 0);
      const double curvature =
          std::abs(ToDouble(SquaredDistance(x, c)) - static_cast<double>(n) / 4);
      worst = std::max(worst, curvature);
    }
    // ||x - c||^2 - n/4 stays within eps (sqrt n + eps sqrt n) sqrt n.
    EXPECT_LE(worst, eps * n + eps * eps * n + 1e-9);
  }
}

TEST(MergeTest, ResidualIsMeanOfChildren) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 6;
    const std::vector<Shell> shells = {RandomShell(rng, n), RandomShell(rng, n)};
    const MergeTree tree = BuildMergeTree(shells);
    const Point x = RandomPoint(rng, n);
    const std::vector<Rational> r = NodeResiduals(tree, x);
    EXPECT_EQ(r[tree.root()], (r[0] + r[1]) / 2);
    // 4 r_par^2 = r_L^2 + r_R^2 + 2 r_L r_R
    EXPECT_EQ(4 * r[2] * r[2] - LevelCorrections(tree, x)[0], r[0] * r[0] + r[1] * r[1]);
  }
}

TEST(MergeTest, CoincidentCentersAverageRadii) {
  Shell a{Point{Rational(1), Rational(2)}, Rational(9), Rational(0)};
  Shell b{a.center, Rational(3), Rational(0)};
  MergeNode left{a.center, a.radius_sq};
  MergeNode right{b.center, b.radius_sq};
  const MergeNode m = MergePair(left, right);
  EXPECT_EQ(m.center, a.center);
  EXPECT_EQ(m.radius_sq, 6);
  EXPECT_EQ(m.level, 1);
}

TEST(MergeTest, MergedRadiusCanBeNegative) {
  // Far apart shells merge to R^2 - h^2 < 0; the identity still holds.
  MergeNode left{Point{Rational(0)}, Rational(1)};
  MergeNode right{Point{Rational(10)}, Rational(1)};
  const MergeNode m = MergePair(left, right);
  EXPECT_EQ(m.center, (Point{Rational(5)}));
  EXPECT_EQ(m.radius_sq, 1 - 25);
}

TEST(MergeTest, PowerOfTwoRequired) {
  std::mt19937_64 rng(2);
  std::vector<Shell> shells = {RandomShell(rng, 3), RandomShell(rng, 3),
                               RandomShell(rng, 3)};
  EXPECT_THROW(BuildMergeTree(shells), DomainError);
  shells.push_back(RandomShell(rng, 3));
  const MergeTree tree = BuildMergeTree(shells);
  EXPECT_EQ(tree.depth(), 2);
  EXPECT_EQ(tree.nodes.size(), 7u);
}

TEST(TelescopeTest, ExactForFourShells) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + rng() % 5;
    std::vector<Shell> shells;
    for (int i = 0; i < 4; ++i) shells.push_back(RandomShell(rng, n));
    const MergeTree tree = BuildMergeTree(shells);
    const Point x = RandomPoint(rng, n);
    Rational l0 = 0;
    for (const Shell& s : shells) {
      const Rational r = ShellResidual(x, s);
      l0 += r * r;
    }
    EXPECT_EQ(TelescopedL0(tree, x, LevelCorrections(tree, x)), l0);
  }
}

TEST(TelescopeTest, ExactForEightShellsOnVertices) {
  std::mt19937_64 rng(5);
  std::vector<Shell> shells;
  for (int i = 0; i < 8; ++i) shells.push_back(RandomShell(rng, 10));
  const MergeTree tree = BuildMergeTree(shells);
  for (int trial = 0; trial < 50; ++trial) {
    const Vertex x = RandomVertex(rng, 10);
    EXPECT_EQ(TelescopedL0(tree, x, LevelCorrections(tree, x)), EvalL0(x, shells));
  }
}

TEST(GridTest, CorrectionsStayWithinBound) {
  const PlantedSssp p = GeneratePlantedSssp(10, 4, 5, 2, Rational(200), Rational(10));
  const std::vector<Shell> shells = BuildShells(p.instance);
  const MergeTree tree = BuildMergeTree(shells, LeafResidualBounds(p.instance));
  const CorrectionGrid grid = BuildCorrectionGrid(tree, p.instance.delta);
  ASSERT_EQ(grid.levels.size(), 2u);
  for (std::uint32_t mask = 0; mask < 1024; ++mask) {
    Vertex x(10);
    for (int k = 0; k < 10; ++k) x[k] = (mask >> k) & 1;
    const std::vector<Rational> m = LevelCorrections(tree, x);
    const std::vector<Rational> r = NodeResiduals(tree, x);
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
      EXPECT_LE(abs(r[i]), tree.nodes[i].residual_bound);
    }
    for (int q = 0; q < 2; ++q) EXPECT_LE(abs(m[q]), grid.levels[q].bound);
  }
}

// Rounding every level correction to its grid moves L0 by at most
// sum_q 4^q step_q / 2 = delta / 2.
TEST(GridTest, RoundedCorrectionsAreSound) {
  const PlantedSssp p = GeneratePlantedSssp(10, 4, 5, 9, Rational(200), Rational(10));
  const std::vector<Shell> shells = BuildShells(p.instance);
  const MergeTree tree = BuildMergeTree(shells, LeafResidualBounds(p.instance));
  const CorrectionGrid grid = BuildCorrectionGrid(tree, p.instance.delta);
  for (int q = 0; q < 2; ++q) {
    EXPECT_EQ(grid.levels[q].step, p.instance.delta / (Pow4(q) * 2));
    EXPECT_EQ(grid.levels[q].Value(0), -grid.levels[q].step * Rational(BigInt(std::to_string(grid.levels[q].half_count))));
  }
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 300; ++trial) {
    const Vertex x = RandomVertex(rng, 10);
    const std::vector<Rational> m = LevelCorrections(tree, x);
    std::vector<Rational> rounded;
    for (int q = 0; q < 2; ++q) {
      const LevelGrid& g = grid.levels[q];
      const BigInt j = Floor(Rational(m[q] / g.step + Rational(1, 2)));
      rounded.push_back(Rational(j) * g.step);
      EXPECT_LE(abs(Rational(rounded[q] - m[q])), g.step / 2);
    }
    const Rational diff = TelescopedL0(tree, x, rounded) - EvalL0(x, shells);
    EXPECT_LE(abs(diff), p.instance.delta / 2);
    EXPECT_LE(abs(diff), 2 * p.instance.delta);
  }
}

TEST(SolveTest, DuplicateRowsFindPlantedLevel) {
  const PlantedSssp p = GeneratePlantedSssp(12, 2, 3, 1, Rational(1500),
                                            Rational(1000), true);
  const SsspResult r = SolveSssp(p.instance);
  ASSERT_TRUE(r.certificate) << SsspResultToJson(r);
  const SsspCertificate& c = *r.certificate;
  EXPECT_TRUE(c.accepted);
  EXPECT_EQ(c.l0, EvalL0(c.x, BuildShells(p.instance)));
  EXPECT_LE(c.l0, 5 * p.instance.delta);
  EXPECT_EQ(c.l0, 0);
  for (const auto& row : p.instance.weight_rows) {
    EXPECT_EQ(2 * WeightOf(row, c.x), Sum(row));
  }
  EXPECT_LE(r.leaves_visited, 10'000'000u);
  EXPECT_EQ(r.curvature_term, Rational(1, 1000));
}

TEST(SolveTest, ContradictoryRowsHaveNoCertificate) {
  std::vector<int> ones(12, 1);
  std::vector<int> bumped = ones;
  bumped.back() = 2;
  // The second row has an odd sum, so no vertex balances both rows.
  const SsspInstance inst = MakeSssp({ones, bumped}, Rational(1500), Rational(2000));
  const SsspResult r = SolveSssp(inst);
  EXPECT_FALSE(r.certificate);
  EXPECT_EQ(r.leaves_visited, ToUint64(r.grid_size));
  const L0Minimum best = MinVertexL0(BuildShells(inst));
  EXPECT_GT(best.value, 5 * inst.delta);
}

TEST(SolveTest, GridOverBudgetIsResourceError) {
  const PlantedSssp p = GeneratePlantedSssp(12, 2, 3, 1, Rational(1500),
                                            Rational(1000), true);
  SsspOptions tiny;
  tiny.max_leaves = 1000;
  EXPECT_THROW(SolveSssp(p.instance, tiny), ResourceError);
}

TEST(SolveTest, RejectsRowCountNotPowerOfTwo) {
  const SsspInstance inst = MakeSssp({{1, 2, 3, 4, 5}, {1, 2, 3, 4, 5}, {2, 2, 2, 2, 2}},
                                     Rational(10), Rational(1));
  EXPECT_THROW(SolveSssp(inst), DomainError);
}

TEST(SolveTest, JsonHasCertificateFields) {
  SsspResult r;
  r.curvature_term = Rational(1, 8);
  r.epsilon_b = Rational(1, 100);
  const std::string json = SsspResultToJson(r);
  EXPECT_NE(json.find("\"found\": false"), std::string::npos);
  EXPECT_NE(json.find("\"den\": \"8\""), std::string::npos) << json;
}

TEST(SolveTest, DefaultRhoScalesWithN) {
  EXPECT_EQ(DefaultRho(12, Rational(3)), 4);
  EXPECT_THROW(DefaultRho(12, Rational(0)), DomainError);
}

}  // namespace
}  // namespace slabsum
