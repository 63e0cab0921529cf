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

#include <cstdint>
#include <string>
#include <variant>

namespace epochpay {

/// Per-epoch stage-game action of a buyer.
enum class BuyerAction : std::uint8_t
{
  PayOnTime,
  PayLate,   // settles within the cure window, penalty terms apply
  Default,   // walks away from the epoch's obligations
};

/// Per-epoch stage-game action of a merchant.
enum class MerchantAction : std::uint8_t
{
  DeliverOnTime,
  DeliverLate,
  FailToDeliver,
};

using Action = std::variant<BuyerAction, MerchantAction>;

constexpr bool conforms(BuyerAction a) { return a == BuyerAction::PayOnTime; }
constexpr bool conforms(MerchantAction a)
{
  return a == MerchantAction::DeliverOnTime;
}

constexpr bool is_default(BuyerAction a) { return a == BuyerAction::Default; }
constexpr bool is_default(MerchantAction a)
{
  return a == MerchantAction::FailToDeliver;
}

constexpr bool is_late(BuyerAction a) { return a == BuyerAction::PayLate; }
constexpr bool is_late(MerchantAction a)
{
  return a == MerchantAction::DeliverLate;
}

inline bool conforms(const Action &a)
{
  return std::visit([](auto v) { return conforms(v); }, a);
}

inline bool is_default(const Action &a)
{
  return std::visit([](auto v) { return is_default(v); }, a);
}

inline bool is_late(const Action &a)
{
  return std::visit([](auto v) { return is_late(v); }, a);
}

inline std::string to_string(BuyerAction a)
{
  switch (a)
  {
  case BuyerAction::PayOnTime:
    return "pay_on_time";
  case BuyerAction::PayLate:
    return "pay_late";
  case BuyerAction::Default:
    return "default";
  }
  return "unknown";
}

inline std::string to_string(MerchantAction a)
{
  switch (a)
  {
  case MerchantAction::DeliverOnTime:
    return "deliver_on_time";
  case MerchantAction::DeliverLate:
    return "deliver_late";
  case MerchantAction::FailToDeliver:
    return "fail_to_deliver";
  }
  return "unknown";
}

}  // namespace epochpay
