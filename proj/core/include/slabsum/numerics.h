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

// Exact arithmetic used throughout the solver. Every geometric quantity in
// this library (norms, inner products, slab thicknesses, shell residuals) is
// either an integer, a rational, or a single square root of a rational; the
// helpers here decide inequalities between such values without ever rounding.

#ifndef SLABSUM_NUMERICS_H_
#define SLABSUM_NUMERICS_H_

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace slabsum {

using BigInt = mpz_class;
using Rational = mpq_class;

// Parses an optionally signed decimal integer. Throws DomainError on any
// other character.
BigInt ParseBigInt(std::string_view text);
std::string ToDecimal(const BigInt& value);

// num/den reduced to lowest terms with a positive denominator. Throws
// DomainError when den == 0.
Rational MakeRational(const BigInt& num, const BigInt& den);

// Accepts "7", "-3/4" and plain decimals like "0.125"; the result is exact
// (0.1 parses to 1/10).
Rational ParseRational(std::string_view text);

BigInt Floor(const Rational& value);
BigInt Ceil(const Rational& value);

// Exact value of a finite double (every double is a dyadic rational).
Rational FromDouble(double value);
double ToDouble(const Rational& value);

// floor(sqrt(a)). Throws DomainError for a < 0.
BigInt Isqrt(const BigInt& a);

// floor(a / sqrt(b)) for a >= 0, b > 0, computed as isqrt(floor(a^2 / b))
// and checked against r^2 * b <= a^2 < (r+1)^2 * b.
BigInt FloorDivSqrt(const BigInt& a, const BigInt& b);

// floor and ceil of x / sqrt(b) for a rational x of either sign, b > 0.
BigInt FloorDivSqrt(const Rational& x, const BigInt& b);
BigInt CeilDivSqrt(const Rational& x, const BigInt& b);

// Three-way comparison of sqrt(radicand) against value; radicand >= 0.
std::strong_ordering CompareSqrt(const Rational& radicand,
                                 const Rational& value);

// Three-way comparison of sqrt(a) + sqrt(b) against value; a, b >= 0.
std::strong_ordering CompareSqrtSum(const Rational& a, const Rational& b,
                                    const Rational& value);

// p + q * sqrt(r) with rational p, q and r >= 0.
class QuadraticSurd {
 public:
  QuadraticSurd() = default;
  QuadraticSurd(Rational p, Rational q, Rational r);

  const Rational& rational_part() const { return p_; }
  const Rational& coefficient() const { return q_; }
  const Rational& radicand() const { return r_; }

  std::strong_ordering CompareTo(const Rational& value) const;
  double ToDouble() const;

 private:
  Rational p_ = 0;
  Rational q_ = 0;
  Rational r_ = 0;
};

// Sum of squares and inner product over equal-length integer vectors.
BigInt SquaredNorm(std::span<const BigInt> v);
BigInt Dot(std::span<const BigInt> a, std::span<const BigInt> b);
BigInt Sum(std::span<const BigInt> v);

// Smallest m with value < 2^m (0 for value == 0).
int BitLength(const BigInt& value);

// Narrowing conversion that throws ResourceError if value does not fit.
std::uint64_t ToUint64(const BigInt& value);

}  // namespace slabsum

#endif  // SLABSUM_NUMERICS_H_
