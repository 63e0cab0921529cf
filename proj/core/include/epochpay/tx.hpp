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

#include "epochpay/ids.hpp"
#include "epochpay/money.hpp"
#include "epochpay/time.hpp"

#include <stdexcept>

namespace epochpay {

/// One service purchase inside an epoch: the buyer owes `payment` (v) at the
/// epoch boundary and privately values the service at `service_value` (w).
/// `service_value` never moves money; it only enters utility accounting.
struct Transaction
{
  Id32       id{};
  AgentId    buyer{};
  AgentId    merchant{};
  Amount     payment{};
  Amount     service_value{};
  EpochIndex epoch{};
};

inline void validate(const Transaction &tx)
{
  if (tx.payment <= Amount{})
  {
    throw std::invalid_argument("Transaction: payment must be positive");
  }
  if (tx.service_value < Amount{})
  {
    throw std::invalid_argument(
        "Transaction: service value must be non-negative");
  }
  if (tx.buyer.role != Role::Buyer || tx.merchant.role != Role::Merchant)
  {
    throw std::invalid_argument("Transaction: role mismatch on endpoints");
  }
}

}  // namespace epochpay
