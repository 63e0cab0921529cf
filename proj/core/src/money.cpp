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

#include "epochpay/ratio.hpp"

#include <cctype>
#include <cstdlib>

namespace epochpay {

std::string Amount::to_string() const
{
  std::int64_t value = micro_;
  bool         neg   = value < 0;
  // Split into whole units and micro remainder without overflowing on
  // INT64_MIN (we never construct it, but stay defensive).
  std::int64_t whole = value / kMicroPerUnit;
  std::int64_t frac  = value % kMicroPerUnit;
  if (frac < 0)
  {
    frac = -frac;
  }
  if (whole < 0)
  {
    whole = -whole;
  }
  std::string out = neg ? "-" : "";
  out += std::to_string(whole);
  if (frac != 0)
  {
    std::string digits = std::to_string(frac);
    digits.insert(digits.begin(), 6 - digits.size(), '0');
    while (digits.back() == '0')
    {
      digits.pop_back();
    }
    out += "." + digits;
  }
  return out;
}

Amount Amount::parse(const std::string &text)
{
  if (text.empty())
  {
    throw std::invalid_argument("Amount::parse: empty string");
  }
  std::size_t pos  = 0;
  bool        neg  = false;
  if (text[0] == '-' || text[0] == '+')
  {
    neg = text[0] == '-';
    pos = 1;
  }
  std::int64_t whole      = 0;
  bool         any_digits = false;
  for (; pos < text.size() && text[pos] != '.'; ++pos)
  {
    char c = text[pos];
    if (!std::isdigit(static_cast<unsigned char>(c)))
    {
      throw std::invalid_argument("Amount::parse: invalid character in " +
                                  text);
    }
    any_digits = true;
    if (__builtin_mul_overflow(whole, 10, &whole) ||
        __builtin_add_overflow(whole, c - '0', &whole))
    {
      throw OverflowError("Amount::parse: value out of range");
    }
  }
  std::int64_t frac_micro = 0;
  if (pos < text.size())
  {
    ++pos;  // skip '.'
    std::size_t digits = 0;
    for (; pos < text.size(); ++pos, ++digits)
    {
      char c = text[pos];
      if (!std::isdigit(static_cast<unsigned char>(c)) || digits >= 6)
      {
        throw std::invalid_argument(
            "Amount::parse: at most six fractional digits allowed in " +
            text);
      }
      frac_micro = frac_micro * 10 + (c - '0');
      any_digits = true;
    }
    for (; digits < 6; ++digits)
    {
      frac_micro *= 10;
    }
  }
  if (!any_digits)
  {
    throw std::invalid_argument("Amount::parse: no digits in " + text);
  }
  std::int64_t micro = 0;
  if (__builtin_mul_overflow(whole, kMicroPerUnit, &micro) ||
      __builtin_add_overflow(micro, frac_micro, &micro))
  {
    throw OverflowError("Amount::parse: value out of range");
  }
  return from_micro(neg ? -micro : micro);
}

Amount apply_rate(Amount principal, Rate annual_rate, Hours duration)
{
  if (duration.count < 0)
  {
    throw std::invalid_argument("apply_rate: negative duration");
  }
  BigInt numerator = BigInt(principal.micro()) * BigInt(annual_rate.ppm) *
                     BigInt(duration.count);
  BigInt denominator = BigInt(1'000'000) * BigInt(kHoursPerYear);
  BigInt micro       = round_half_even_div(numerator, denominator);
  if (micro > INT64_MAX || micro < INT64_MIN)
  {
    throw OverflowError("apply_rate: result out of range");
  }
  return Amount::from_micro(micro.convert_to<std::int64_t>());
}

}  // namespace epochpay
