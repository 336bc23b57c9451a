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

#include "slabsum/numerics.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "slabsum/errors.h"

namespace slabsum {
namespace {

TEST(ParseTest, BigIntRoundTrip) {
  const std::string big = "999999999999999999999999";
  EXPECT_EQ(ToDecimal(ParseBigInt(big)), big);
  EXPECT_EQ(ParseBigInt("-42"), -42);
  EXPECT_THROW(ParseBigInt("12a"), DomainError);
  EXPECT_THROW(ParseBigInt(""), DomainError);
}

TEST(ParseTest, RationalForms) {
  EXPECT_EQ(ParseRational("0.1"), Rational(1, 10));
  EXPECT_EQ(ParseRational("-3/4"), Rational(-3, 4));
  EXPECT_EQ(ParseRational("6/8"), Rational(3, 4));
  EXPECT_EQ(ParseRational("7"), Rational(7));
  EXPECT_EQ(ParseRational(".5"), Rational(1, 2));
  EXPECT_THROW(ParseRational("1/0"), DomainError);
  EXPECT_THROW(ParseRational("1.2.3"), DomainError);
}

TEST(RoundingTest, FloorAndCeilOfNegatives) {
  EXPECT_EQ(Floor(Rational(-7, 2)), -4);
  EXPECT_EQ(Ceil(Rational(-7, 2)), -3);
  EXPECT_EQ(Floor(Rational(7, 2)), 3);
  EXPECT_EQ(Ceil(Rational(3)), 3);
}

TEST(RoundingTest, FromDoubleIsExact) {
  EXPECT_EQ(FromDouble(0.375), Rational(3, 8));
  EXPECT_NE(FromDouble(0.1), Rational(1, 10));
  EXPECT_THROW(FromDouble(std::nan("")), DomainError);
}

TEST(IsqrtTest, SmallValues) {
  for (int a = 0; a < 2000; ++a) {
    const BigInt r = Isqrt(BigInt(a));
    EXPECT_LE(r * r, a);
    EXPECT_GT((r + 1) * (r + 1), a);
  }
  EXPECT_THROW(Isqrt(BigInt(-1)), DomainError);
}

TEST(FloorDivSqrtTest, AgreesWithDefinitionOnRandomInputs) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 5000; ++i) {
    const BigInt a(static_cast<unsigned long>(rng() % 100000));
    const BigInt b(static_cast<unsigned long>(rng() % 5000 + 1));
    const BigInt r = FloorDivSqrt(a, b);
    // r <= a / sqrt(b) < r + 1  <=>  r^2 b <= a^2 < (r+1)^2 b
    EXPECT_LE(r * r * b, a * a);
    EXPECT_GT((r + 1) * (r + 1) * b, a * a);
  }
}

TEST(FloorDivSqrtTest, RationalOfBothSigns) {
  // 10 / sqrt(4) = 5 exactly.
  EXPECT_EQ(FloorDivSqrt(Rational(10), BigInt(4)), 5);
  EXPECT_EQ(CeilDivSqrt(Rational(10), BigInt(4)), 5);
  // 1 / sqrt(2) ~ 0.707
  EXPECT_EQ(FloorDivSqrt(Rational(1), BigInt(2)), 0);
  EXPECT_EQ(CeilDivSqrt(Rational(1), BigInt(2)), 1);
  EXPECT_EQ(FloorDivSqrt(Rational(-1), BigInt(2)), -1);
  EXPECT_EQ(CeilDivSqrt(Rational(-1), BigInt(2)), 0);
  // (7/3) / sqrt(5) ~ 1.0435
  EXPECT_EQ(FloorDivSqrt(Rational(7, 3), BigInt(5)), 1);
  EXPECT_EQ(CeilDivSqrt(Rational(7, 3), BigInt(5)), 2);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const long num = static_cast<long>(rng() % 20001) - 10000;
    const long den = static_cast<long>(rng() % 97) + 1;
    const BigInt b(static_cast<unsigned long>(rng() % 1000 + 1));
    Rational x(num, den);
    x.canonicalize();
    const double v = static_cast<double>(num) / den /
                     std::sqrt(static_cast<double>(b.get_ui()));
    const BigInt f = FloorDivSqrt(x, b);
    const BigInt c = CeilDivSqrt(x, b);
    EXPECT_LE(f, c);
    EXPECT_LE(c - f, 1);
    EXPECT_NEAR(f.get_d(), std::floor(v), 1.0);
    EXPECT_NEAR(c.get_d(), std::ceil(v), 1.0);
  }
}

TEST(CompareSqrtTest, ExactCases) {
  EXPECT_EQ(CompareSqrt(Rational(4), Rational(2)), std::strong_ordering::equal);
  EXPECT_EQ(CompareSqrt(Rational(2), Rational(3, 2)), std::strong_ordering::less);
  EXPECT_EQ(CompareSqrt(Rational(2), Rational(7, 5)),
            std::strong_ordering::greater);
  EXPECT_EQ(CompareSqrt(Rational(0), Rational(-1)),
            std::strong_ordering::greater);
}

TEST(CompareSqrtTest, SumAgainstDouble) {
  // sqrt(2) + sqrt(3) = 3.14626...
  EXPECT_EQ(CompareSqrtSum(Rational(2), Rational(3), Rational(157, 50)),
            std::strong_ordering::greater);
  EXPECT_EQ(CompareSqrtSum(Rational(2), Rational(3), Rational(63, 20)),
            std::strong_ordering::less);
  EXPECT_EQ(CompareSqrtSum(Rational(1), Rational(4), Rational(3)),
            std::strong_ordering::equal);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    Rational a(static_cast<long>(rng() % 1000), 7);
    Rational b(static_cast<long>(rng() % 1000), 11);
    Rational v(static_cast<long>(rng() % 4000), 100);
    a.canonicalize();
    b.canonicalize();
    v.canonicalize();
    const double lhs = std::sqrt(a.get_d()) + std::sqrt(b.get_d());
    const double rhs = v.get_d();
    if (std::abs(lhs - rhs) < 1e-9) continue;
    EXPECT_EQ(CompareSqrtSum(a, b, v) < 0, lhs < rhs);
  }
}

TEST(QuadraticSurdTest, SignsOfCoefficient) {
  // 1 - sqrt(2) ~ -0.414
  const QuadraticSurd s(Rational(1), Rational(-1), Rational(2));
  EXPECT_TRUE(s.CompareTo(Rational(-2, 5)) < 0);
  EXPECT_TRUE(s.CompareTo(Rational(-1, 2)) > 0);
  EXPECT_NEAR(s.ToDouble(), 1 - std::sqrt(2.0), 1e-12);
  // 3 + 2 sqrt(9) = 9
  const QuadraticSurd t(Rational(3), Rational(2), Rational(9));
  EXPECT_EQ(t.CompareTo(Rational(9)), std::strong_ordering::equal);
}

TEST(VectorTest, NormsAndConversions) {
  const std::vector<BigInt> a = {3, 4};
  const std::vector<BigInt> b = {1, 2};
  EXPECT_EQ(SquaredNorm(a), 25);
  EXPECT_EQ(Dot(a, b), 11);
  EXPECT_EQ(Sum(a), 7);
  EXPECT_EQ(BitLength(BigInt(0)), 0);
  EXPECT_EQ(BitLength(BigInt(8)), 4);
  EXPECT_EQ(ToUint64(BigInt(123)), 123u);
  EXPECT_THROW(ToUint64(BigInt(1) << 70), ResourceError);
  EXPECT_THROW(ToUint64(BigInt(-1)), ResourceError);
}

}  // namespace
}  // namespace slabsum
