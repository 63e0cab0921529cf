#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2026 The Epochpay Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include "epochpay/money.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>

namespace epochpay {

using BigInt      = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// An exact rational. Discount factors, risk bounds, utilities and every
/// analytic threshold are held in this type; no protocol decision ever goes
/// through floating point. Values are kept in lowest terms by the backing
/// representation.
class Ratio
{
public:
  Ratio() = default;

  Ratio(std::int64_t numerator, std::int64_t denominator);

  explicit Ratio(BigRational value) : value_{std::move(value)} {}

  static Ratio from_int(std::int64_t n) { return Ratio{n, 1}; }

  /// Exact value of an Amount expressed in units (micro / 10^6).
  static Ratio from_amount(Amount amount);

  /// Accepts "num/den" or an exact decimal such as "0.74". Throws
  /// std::invalid_argument on malformed input or zero denominator.
  static Ratio parse(const std::string &text);

  const BigRational &value() const { return value_; }
  BigInt             numerator() const;
  BigInt             denominator() const;

  bool is_zero() const { return value_ == 0; }
  bool is_negative() const { return value_ < 0; }

  Ratio pow(unsigned exponent) const;

  /// Lowest-terms "num/den" (denominator 1 renders as a bare integer).
  std::string to_string() const;

  /// Decimal approximation for human-facing columns; never used in logic.
  double to_double() const;

  friend Ratio operator+(const Ratio &a, const Ratio &b)
  {
    return Ratio{a.value_ + b.value_};
  }
  friend Ratio operator-(const Ratio &a, const Ratio &b)
  {
    return Ratio{a.value_ - b.value_};
  }
  friend Ratio operator-(const Ratio &a) { return Ratio{-a.value_}; }
  friend Ratio operator*(const Ratio &a, const Ratio &b)
  {
    return Ratio{a.value_ * b.value_};
  }
  friend Ratio operator/(const Ratio &a, const Ratio &b);

  Ratio &operator+=(const Ratio &other) { return *this = *this + other; }
  Ratio &operator-=(const Ratio &other) { return *this = *this - other; }
  Ratio &operator*=(const Ratio &other) { return *this = *this * other; }

  friend bool operator==(const Ratio &a, const Ratio &b)
  {
    return a.value_ == b.value_;
  }
  friend bool operator<(const Ratio &a, const Ratio &b)
  {
    return a.value_ < b.value_;
  }
  friend bool operator>(const Ratio &a, const Ratio &b) { return b < a; }
  friend bool operator<=(const Ratio &a, const Ratio &b) { return !(b < a); }
  friend bool operator>=(const Ratio &a, const Ratio &b) { return !(a < b); }
  friend bool operator!=(const Ratio &a, const Ratio &b) { return !(a == b); }

private:
  BigRational value_ = 0;
};

/// Quotient of two big integers rounded half-to-even. Shared by rate
/// application and auction fee computation so every rounding in the system
/// follows one rule.
BigInt round_half_even_div(const BigInt &numerator, const BigInt &denominator);

}  // namespace epochpay
