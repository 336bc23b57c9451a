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

#include <cctype>
#include <cmath>
#include <limits>
#include <utility>

#include "slabsum/errors.h"

namespace slabsum {

namespace {

std::string JoinIndices(const std::vector<std::size_t>& indices) {
  std::string out;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(indices[i]);
  }
  return out;
}

bool AllDigits(std::string_view text) {
  if (text.empty()) return false;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::strong_ordering Reverse(std::strong_ordering order) {
  if (order < 0) return std::strong_ordering::greater;
  if (order > 0) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

template <typename T>
std::strong_ordering Order(const T& a, const T& b) {
  const int c = cmp(a, b);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace

QuantizationUnderflow::QuantizationUnderflow(std::vector<std::size_t> indices)
    : DomainError("quantization underflow: u_k = 0 at indices [" +
                  JoinIndices(indices) + "]; raise N"),
      indices_(std::move(indices)) {}

BigInt ParseBigInt(std::string_view text) {
  std::string_view digits = text;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
    digits.remove_prefix(1);
  }
  if (!AllDigits(digits)) {
    throw DomainError("not a decimal integer: '" + std::string(text) + "'");
  }
  std::string canonical(text);
  if (canonical.front() == '+') canonical.erase(0, 1);
  return BigInt(canonical, 10);
}

std::string ToDecimal(const BigInt& value) { return value.get_str(10); }

Rational MakeRational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational ParseRational(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return MakeRational(ParseBigInt(text.substr(0, slash)),
                        ParseBigInt(text.substr(slash + 1)));
  }
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) return Rational(ParseBigInt(text));
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = text.substr(dot + 1);
  const bool negative = !whole.empty() && whole.front() == '-';
  if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) {
    whole.remove_prefix(1);
  }
  if ((whole.empty() && frac.empty()) ||
      (!whole.empty() && !AllDigits(whole)) ||
      (!frac.empty() && !AllDigits(frac))) {
    throw DomainError("not a decimal number: '" + std::string(text) + "'");
  }
  BigInt num(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
  BigInt den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
  if (negative) num = -num;
  return MakeRational(num, den);
}

BigInt Floor(const Rational& value) {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

BigInt Ceil(const Rational& value) {
  BigInt out;
  mpz_cdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

Rational FromDouble(double value) {
  if (!std::isfinite(value)) throw DomainError("non-finite double");
  Rational out;
  mpq_set_d(out.get_mpq_t(), value);
  return out;
}

double ToDouble(const Rational& value) { return value.get_d(); }

BigInt Isqrt(const BigInt& a) {
  if (a < 0) throw DomainError("isqrt of a negative number");
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

BigInt FloorDivSqrt(const BigInt& a, const BigInt& b) {
  if (b <= 0) throw DomainError("floor_div_sqrt: divisor radicand must be > 0");
  if (a < 0) throw DomainError("floor_div_sqrt: numerator must be >= 0");
  const BigInt a_sq = a * a;
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a_sq.get_mpz_t(), b.get_mpz_t());
  BigInt r = Isqrt(q);
  // r^2 b <= a^2 < (r+1)^2 b; holds by construction, kept as a cheap check.
  const BigInt next = r + 1;
  if (r * r * b > a_sq || next * next * b <= a_sq) {
    throw Error("floor_div_sqrt post-condition violated");
  }
  return r;
}

namespace {

// ceil(a / sqrt(b)) for a >= 0.
BigInt CeilDivSqrtNonNegative(const BigInt& a, const BigInt& b) {
  BigInt r = FloorDivSqrt(a, b);
  if (r * r * b == a * a) return r;
  return r + 1;
}

}  // namespace

BigInt FloorDivSqrt(const Rational& x, const BigInt& b) {
  if (b <= 0) throw DomainError("floor_div_sqrt: divisor radicand must be > 0");
  const BigInt& p = x.get_num();
  const BigInt& q = x.get_den();
  const BigInt scaled = q * q * b;
  if (p >= 0) return FloorDivSqrt(p, scaled);
  return -CeilDivSqrtNonNegative(BigInt(-p), scaled);
}

BigInt CeilDivSqrt(const Rational& x, const BigInt& b) {
  if (b <= 0) throw DomainError("ceil_div_sqrt: divisor radicand must be > 0");
  const BigInt& p = x.get_num();
  const BigInt& q = x.get_den();
  const BigInt scaled = q * q * b;
  if (p >= 0) return CeilDivSqrtNonNegative(p, scaled);
  return -FloorDivSqrt(BigInt(-p), scaled);
}

std::strong_ordering CompareSqrt(const Rational& radicand,
                                 const Rational& value) {
  if (radicand < 0) throw DomainError("square root of a negative rational");
  if (value < 0) return std::strong_ordering::greater;
  return Order(radicand, Rational(value * value));
}

std::strong_ordering CompareSqrtSum(const Rational& a, const Rational& b,
                                    const Rational& value) {
  if (a < 0 || b < 0) throw DomainError("square root of a negative rational");
  if (value < 0) return std::strong_ordering::greater;
  // sqrt(a) + sqrt(b) vs v  <=>  2 sqrt(ab) vs v^2 - a - b.
  const Rational rest = value * value - a - b;
  if (rest < 0) return std::strong_ordering::greater;
  return Order(Rational(4 * a * b), Rational(rest * rest));
}

QuadraticSurd::QuadraticSurd(Rational p, Rational q, Rational r)
    : p_(std::move(p)), q_(std::move(q)), r_(std::move(r)) {
  if (r_ < 0) throw DomainError("quadratic surd with negative radicand");
}

std::strong_ordering QuadraticSurd::CompareTo(const Rational& value) const {
  // p + q sqrt(r) vs v  <=>  q sqrt(r) vs v - p.
  const Rational rest = value - p_;
  if (q_ == 0 || r_ == 0) return Order(Rational(0), rest);
  if (q_ > 0) return CompareSqrt(r_, Rational(rest / q_));
  // -|q| sqrt(r) vs rest  <=>  reversed(|q| sqrt(r) vs -rest).
  const Rational abs_q = -q_;
  return Reverse(CompareSqrt(r_, Rational(-rest / abs_q)));
}

double QuadraticSurd::ToDouble() const {
  return p_.get_d() + q_.get_d() * std::sqrt(r_.get_d());
}

BigInt SquaredNorm(std::span<const BigInt> v) {
  BigInt out = 0;
  for (const BigInt& x : v) out += x * x;
  return out;
}

BigInt Dot(std::span<const BigInt> a, std::span<const BigInt> b) {
  if (a.size() != b.size()) throw DomainError("dot product of unequal sizes");
  BigInt out = 0;
  for (std::size_t i = 0; i < a.size(); ++i) out += a[i] * b[i];
  return out;
}

BigInt Sum(std::span<const BigInt> v) {
  BigInt out = 0;
  for (const BigInt& x : v) out += x;
  return out;
}

int BitLength(const BigInt& value) {
  if (value == 0) return 0;
  return static_cast<int>(mpz_sizeinbase(value.get_mpz_t(), 2));
}

std::uint64_t ToUint64(const BigInt& value) {
  if (value < 0 || BitLength(value) > 64) {
    throw ResourceError("value " + ToDecimal(value) +
                        " does not fit in a 64-bit machine word");
  }
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, value.get_mpz_t());
  return out;
}

}  // namespace slabsum
