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

#include "epochpay/ratio.hpp"

#include <cctype>
#include <stdexcept>

namespace epochpay {

Ratio::Ratio(std::int64_t numerator, std::int64_t denominator)
{
  if (denominator == 0)
  {
    throw std::invalid_argument("Ratio: zero denominator");
  }
  value_ = BigRational(BigInt(numerator), BigInt(denominator));
}

Ratio Ratio::from_amount(Amount amount)
{
  return Ratio{amount.micro(), Amount::kMicroPerUnit};
}

Ratio Ratio::parse(const std::string &text)
{
  if (text.empty())
  {
    throw std::invalid_argument("Ratio::parse: empty string");
  }
  auto slash = text.find('/');
  try
  {
    if (slash != std::string::npos)
    {
      BigInt num(text.substr(0, slash));
      BigInt den(text.substr(slash + 1));
      if (den == 0)
      {
        throw std::invalid_argument("Ratio::parse: zero denominator");
      }
      return Ratio{BigRational(num, den)};
    }
    auto dot = text.find('.');
    if (dot == std::string::npos)
    {
      return Ratio{BigRational(BigInt(text))};
    }
    std::string whole = text.substr(0, dot);
    std::string frac  = text.substr(dot + 1);
    if (frac.empty())
    {
      throw std::invalid_argument("Ratio::parse: trailing decimal point");
    }
    for (char c : frac)
    {
      if (!std::isdigit(static_cast<unsigned char>(c)))
      {
        throw std::invalid_argument("Ratio::parse: invalid fraction digits");
      }
    }
    bool negative = !whole.empty() && whole[0] == '-';
    if (whole == "-" || whole.empty())
    {
      whole += "0";
    }
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i)
    {
      scale *= 10;
    }
    BigInt whole_part(whole);
    BigInt frac_part(frac);
    BigInt total = whole_part * scale + (negative ? -frac_part : frac_part);
    return Ratio{BigRational(total, scale)};
  }
  catch (std::runtime_error const &)
  {
    // cpp_int's string constructor reports garbage via runtime_error.
    throw std::invalid_argument("Ratio::parse: malformed number: " + text);
  }
}

BigInt Ratio::numerator() const
{
  return boost::multiprecision::numerator(value_);
}

BigInt Ratio::denominator() const
{
  return boost::multiprecision::denominator(value_);
}

Ratio Ratio::pow(unsigned exponent) const
{
  BigRational result = 1;
  BigRational base   = value_;
  unsigned    e      = exponent;
  while (e > 0)
  {
    if (e & 1U)
    {
      result *= base;
    }
    base *= base;
    e >>= 1U;
  }
  return Ratio{result};
}

std::string Ratio::to_string() const
{
  BigInt num = numerator();
  BigInt den = denominator();
  if (den == 1)
  {
    return num.str();
  }
  return num.str() + "/" + den.str();
}

double Ratio::to_double() const
{
  return value_.convert_to<double>();
}

Ratio operator/(const Ratio &a, const Ratio &b)
{
  if (b.is_zero())
  {
    throw std::invalid_argument("Ratio: division by zero");
  }
  return Ratio{a.value_ / b.value_};
}

BigInt round_half_even_div(const BigInt &numerator, const BigInt &denominator)
{
  if (denominator == 0)
  {
    throw std::invalid_argument("round_half_even_div: zero denominator");
  }
  BigInt num = numerator;
  BigInt den = denominator;
  if (den < 0)
  {
    num = -num;
    den = -den;
  }
  // Floor quotient and non-negative remainder in [0, den).
  BigInt q = num / den;  // truncates toward zero
  BigInt r = num % den;
  if (r < 0)
  {
    q -= 1;
    r += den;
  }
  BigInt twice = r * 2;
  if (twice > den)
  {
    return q + 1;
  }
  if (twice < den)
  {
    return q;
  }
  // Exactly halfway: round to the even neighbour.
  return (q % 2 == 0) ? q : q + 1;
}

}  // namespace epochpay
