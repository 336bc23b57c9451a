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

// Low-bit approximation of a hyperplane normal.
//
// Given positive weights S and a scale N, the quantized normal U has entries
//
//   u_k = floor(N * s_k / ||S||)
//
// so every u_k fits in log2(N) bits while U/||U|| stays close to S/||S||.
// The angle a between U and S controls how far vertices on the S-hyperplane
// can drift from the U-hyperplane; that drift is d* = sqrt(n)/2 * sin(a).
// Everything cached here is exact: cos^2(a) and d*^2 are rationals, the
// direction residual ||S/||S|| - U/N||^2 is a quadratic surd.

#ifndef SLABSUM_QUANTIZE_H_
#define SLABSUM_QUANTIZE_H_

#include <optional>
#include <span>
#include <vector>

#include "slabsum/instance.h"
#include "slabsum/numerics.h"

namespace slabsum {

struct QuantizedNormal {
  std::vector<BigInt> u;
  BigInt big_n;                 // the scale N
  std::optional<int> exponent;  // c when N = n^c
  BigInt norm_s_sq;             // ||S||^2
  BigInt norm_u_sq;             // ||U||^2
  BigInt dot_su;                // S^T U
  BigInt sum_s;
  BigInt sum_u;
  Rational cos_sq;              // (S^T U)^2 / (||S||^2 ||U||^2)
  Rational d_star_sq;           // (n/4) (1 - cos^2 a)
  QuadraticSurd direction_residual;  // ||S/||S|| - U/N||^2

  std::size_t n() const { return u.size(); }
};

struct QuantizeOptions {
  // Keep u_k = 0 entries instead of throwing QuantizationUnderflow. Only
  // meaningful for diagnostics; the slab engine never sets it.
  bool allow_zero_entries = false;
};

// n^c. Throws DomainError for n < 1 or c < 0.
BigInt PowerScale(std::size_t n, int c);

QuantizedNormal Quantize(std::span<const BigInt> weights, const BigInt& big_n,
                         const QuantizeOptions& options = {});

// N = n^c with c >= 2.
QuantizedNormal QuantizeWithExponent(const PartitionInstance& instance, int c,
                                     const QuantizeOptions& options = {});

// Exact check of the direction residual against n / N^2.
bool DirectionBoundHolds(const QuantizedNormal& q);

// (d* ||U||)^2 against (n/2)^2 (1 + 4n/N^2). The chain bounding the shift
// range is only asymptotic, so this is monitored, not enforced.
struct ShiftBoundReport {
  Rational value_sq;  // (d* ||U||)^2
  Rational limit_sq;  // (n/2)^2 (1 + 4n/N^2)
  bool within = false;
};
ShiftBoundReport CheckShiftBound(const QuantizedNormal& q);

}  // namespace slabsum

#endif  // SLABSUM_QUANTIZE_H_
