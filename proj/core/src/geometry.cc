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

#include "slabsum/geometry.h"

#include "slabsum/errors.h"

namespace slabsum {

Point ToPoint(std::span<const std::uint8_t> x) {
  Point out;
  out.reserve(x.size());
  for (auto bit : x) out.emplace_back(static_cast<unsigned long>(bit));
  return out;
}

Point CubeCenter(std::size_t n) { return Point(n, Rational(1, 2)); }

Rational SquaredDistance(std::span<const Rational> a,
                         std::span<const Rational> b) {
  if (a.size() != b.size()) throw DomainError("points of different dimension");
  Rational out = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Rational d = a[i] - b[i];
    out += d * d;
  }
  return out;
}

Rational ShellResidual(std::span<const Rational> x, const Shell& shell) {
  return SquaredDistance(x, shell.center) - shell.radius_sq;
}

Rational ShellResidual(std::span<const std::uint8_t> x, const Shell& shell) {
  if (x.size() != shell.center.size()) {
    throw DomainError("vertex and shell differ in dimension");
  }
  Rational out = -shell.radius_sq;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Rational d = Rational(static_cast<unsigned long>(x[i])) - shell.center[i];
    out += d * d;
  }
  return out;
}

bool InShell(std::span<const Rational> x, const Shell& shell) {
  // sqrt(A) - sqrt(B) <= h  and  sqrt(B) - sqrt(A) <= h with A = ||x - C||^2
  // and B = R^2. Each side is sqrt(u) <= sqrt(v) + h, i.e.
  // u - v - h^2 <= 2 h sqrt(v).
  const Rational a = SquaredDistance(x, shell.center);
  const Rational& b = shell.radius_sq;
  const Rational& h = shell.half_thickness;
  if (h < 0) return false;
  auto within = [&h](const Rational& u, const Rational& v) {
    const Rational lhs = u - v - h * h;
    if (lhs <= 0) return true;
    if (h == 0) return false;
    // lhs <= 2h sqrt(v)  <=>  sqrt(v) >= lhs / (2h)
    return CompareSqrt(v, Rational(lhs / (2 * h))) >= 0;
  };
  return within(a, b) && within(b, a);
}

BigInt WeightOf(std::span<const BigInt> weights,
                std::span<const std::uint8_t> x) {
  if (weights.size() != x.size()) throw DomainError("vertex size mismatch");
  BigInt out = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i]) out += weights[i];
  }
  return out;
}

}  // namespace slabsum
