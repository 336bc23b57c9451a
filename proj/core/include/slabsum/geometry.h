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

#ifndef SLABSUM_GEOMETRY_H_
#define SLABSUM_GEOMETRY_H_

#include <span>
#include <vector>

#include "slabsum/instance.h"
#include "slabsum/numerics.h"

namespace slabsum {

using Point = std::vector<Rational>;

// Sphere ||x - center|| = sqrt(radius_sq) thickened by +-half_thickness.
struct Shell {
  Point center;
  Rational radius_sq;
  Rational half_thickness;
};

Point ToPoint(std::span<const std::uint8_t> x);
// 1/2 * 1_n.
Point CubeCenter(std::size_t n);

Rational SquaredDistance(std::span<const Rational> a,
                         std::span<const Rational> b);

// ||x - C||^2 - R^2, exact.
Rational ShellResidual(std::span<const Rational> x, const Shell& shell);
Rational ShellResidual(std::span<const std::uint8_t> x, const Shell& shell);

// | ||x - C|| - R | <= half_thickness, decided exactly.
bool InShell(std::span<const Rational> x, const Shell& shell);

// S^T x for a vertex.
BigInt WeightOf(std::span<const BigInt> weights, std::span<const std::uint8_t> x);

}  // namespace slabsum

#endif  // SLABSUM_GEOMETRY_H_
