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

#include "epochpay/time.hpp"

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace epochpay {

/// Raised when a monetary computation would leave the representable range.
/// Monetary state is never silently saturated or wrapped.
class OverflowError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A currency amount in integer micro-units (10^6 micro-units per unit).
/// All balances, stakes, penalties and rewards are held in this type, so
/// settlement arithmetic is exact; the only place a fraction can appear is
/// rate application, which rounds at a single documented point.
class Amount
{
public:
  static constexpr std::int64_t kMicroPerUnit = 1'000'000;

  constexpr Amount() = default;

  static constexpr Amount from_micro(std::int64_t micro)
  {
    return Amount{micro};
  }

  static Amount from_units(std::int64_t units)
  {
    if (units > kMaxUnits || units < -kMaxUnits)
    {
      throw OverflowError("Amount::from_units: out of range");
    }
    return Amount{units * kMicroPerUnit};
  }

  constexpr std::int64_t micro() const { return micro_; }

  friend constexpr auto operator<=>(Amount, Amount) = default;

  friend Amount operator+(Amount a, Amount b)
  {
    std::int64_t out = 0;
    if (__builtin_add_overflow(a.micro_, b.micro_, &out))
    {
      throw OverflowError("Amount: addition overflow");
    }
    return Amount{out};
  }

  friend Amount operator-(Amount a, Amount b)
  {
    std::int64_t out = 0;
    if (__builtin_sub_overflow(a.micro_, b.micro_, &out))
    {
      throw OverflowError("Amount: subtraction overflow");
    }
    return Amount{out};
  }

  friend Amount operator-(Amount a) { return Amount{} - a; }

  friend Amount operator*(Amount a, std::int64_t k)
  {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a.micro_, k, &out))
    {
      throw OverflowError("Amount: multiplication overflow");
    }
    return Amount{out};
  }

  Amount &operator+=(Amount other) { return *this = *this + other; }
  Amount &operator-=(Amount other) { return *this = *this - other; }

  bool is_negative() const { return micro_ < 0; }

  /// Exact decimal rendering in units, e.g. "27.1" or "-0.000031".
  std::string to_string() const;

  /// Parses an exact decimal unit string with at most six fractional digits
  /// ("100", "27.1", "-0.5"). Throws std::invalid_argument otherwise.
  static Amount parse(const std::string &text);

private:
  constexpr explicit Amount(std::int64_t micro) : micro_{micro} {}

  static constexpr std::int64_t kMaxUnits =
      INT64_MAX / kMicroPerUnit;

  std::int64_t micro_ = 0;
};

/// An annual interest / fee rate in parts-per-million. 50 000 ppm == 5 %.
struct Rate
{
  std::uint64_t ppm = 0;

  friend constexpr auto operator<=>(Rate, Rate) = default;
};

/// Pro-rata rate application: principal × (ppm / 10^6) × (hours / 8760),
/// evaluated exactly in big integers and rounded to micro-units half-to-even.
/// This is the single place the monetary system rounds.
Amount apply_rate(Amount principal, Rate annual_rate, Hours duration);

}  // namespace epochpay
