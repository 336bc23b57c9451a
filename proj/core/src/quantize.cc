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

#include "slabsum/quantize.h"

#include "slabsum/errors.h"

namespace slabsum {

BigInt PowerScale(std::size_t n, int c) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (c < 0) throw DomainError("exponent must be >= 0");
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), n, static_cast<unsigned long>(c));
  return out;
}

QuantizedNormal Quantize(std::span<const BigInt> weights, const BigInt& big_n,
                         const QuantizeOptions& options) {
  if (weights.empty()) throw DomainError("cannot quantize an empty normal");
  if (big_n < 1) throw DomainError("N must be >= 1");
  for (const BigInt& s : weights) {
    if (s <= 0) throw DomainError("weights must be positive");
  }

  QuantizedNormal q;
  q.big_n = big_n;
  q.norm_s_sq = SquaredNorm(weights);
  q.u.reserve(weights.size());
  std::vector<std::size_t> zeros;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    q.u.push_back(FloorDivSqrt(BigInt(big_n * weights[k]), q.norm_s_sq));
    if (q.u.back() == 0) zeros.push_back(k);
  }
  if (!zeros.empty() && !options.allow_zero_entries) {
    throw QuantizationUnderflow(std::move(zeros));
  }

  q.norm_u_sq = SquaredNorm(q.u);
  q.dot_su = Dot(weights, q.u);
  q.sum_s = Sum(weights);
  q.sum_u = Sum(q.u);

  const Rational n(static_cast<unsigned long>(weights.size()));
  if (q.norm_u_sq == 0) {
    q.cos_sq = 0;
  } else {
    q.cos_sq = MakeRational(q.dot_su * q.dot_su, q.norm_s_sq * q.norm_u_sq);
  }
  q.d_star_sq = n / 4 * (1 - q.cos_sq);

  // 1 + ||U||^2/N^2 - (2 S^T U / N) * sqrt(1 / ||S||^2)
  const Rational n_sq(big_n * big_n);
  q.direction_residual = QuadraticSurd(
      Rational(1 + Rational(q.norm_u_sq) / n_sq),
      Rational(-2 * Rational(q.dot_su) / Rational(big_n)),
      MakeRational(1, q.norm_s_sq));
  return q;
}

QuantizedNormal QuantizeWithExponent(const PartitionInstance& instance, int c,
                                     const QuantizeOptions& options) {
  if (c < 2) throw DomainError("exponent c must be >= 2");
  QuantizedNormal q =
      Quantize(instance.weights, PowerScale(instance.n(), c), options);
  q.exponent = c;
  return q;
}

bool DirectionBoundHolds(const QuantizedNormal& q) {
  const Rational bound = MakeRational(BigInt(static_cast<unsigned long>(q.n())),
                                      q.big_n * q.big_n);
  return q.direction_residual.CompareTo(bound) <= 0;
}

ShiftBoundReport CheckShiftBound(const QuantizedNormal& q) {
  const Rational n(static_cast<unsigned long>(q.n()));
  const Rational n_sq(q.big_n * q.big_n);
  ShiftBoundReport report;
  report.value_sq = q.d_star_sq * Rational(q.norm_u_sq);
  report.limit_sq = (n / 2) * (n / 2) * (1 + 4 * n / n_sq);
  report.within = report.value_sq <= report.limit_sq;
  return report;
}

}  // namespace slabsum
