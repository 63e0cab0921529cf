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
#include "epochpay/phase.hpp"
#include "epochpay/ratio.hpp"

#include <stdexcept>
#include <variant>

namespace epochpay {

/// Sentinel for "no credit cap" — large enough to never bind in scenarios,
/// small enough that growth arithmetic can't overflow.
inline constexpr std::int64_t kNoCreditCapMicro = INT64_MAX / 4;

inline Amount no_credit_cap()
{
  return Amount::from_micro(kNoCreditCapMicro);
}

/// A buyer's protocol-visible account. `cash` is the cumulative net transfer
/// position (signed — it is a flow ledger, not a custody balance); stake,
/// credit limit and used credit are non-negative state the contract enforces.
struct BuyerAccount
{
  Amount       stake{};
  Amount       credit_limit{};
  Amount       used{};    // credit consumed in the current epoch
  Amount       funded{};  // portion of `used` financed by an auction win
  int          trust = 0;
  PenaltyPhase phase{};
  bool         alive       = true;
  bool         misuse_flag = false;
  Amount       cash{};
};

struct MerchantAccount
{
  Amount       stake{};
  int          trust = 0;
  PenaltyPhase phase{};
  bool         alive = true;
  Amount       cash{};
};

struct GuarantorAccount
{
  Amount stake{};
  Amount locked{};  // portion of stake locked behind live auction bids
  Amount cash{};
};

/// Result of a payment authorization against a buyer's credit line.
struct Approved
{};

/// The request exceeds the limit but stays inside the admissible risk bound;
/// the deficit may be funded through an over-limit auction.
struct OverLimit
{
  Amount deficit{};
};

/// The request exceeds even the risk bound: the account is flagged.
struct RejectedMisuse
{};

using AuthorizationResult = std::variant<Approved, OverLimit, RejectedMisuse>;

/// Gate for one payment request. Approval consumes credit immediately;
/// an over-limit verdict consumes nothing (credit is consumed only if an
/// auction later funds the deficit); a rejection raises the misuse flag.
/// The deficit test is exact: used + amount − CL ≤ risk_bound · CL compared
/// in rationals. Throws std::logic_error on a dead account.
AuthorizationResult authorize_payment(BuyerAccount &account, Amount amount,
                                      const Ratio &risk_bound);

enum class CreditOutcome
{
  Conform,
  Late,
  Default,
};

struct CreditPolicy
{
  Amount growth{};       // added after a conforming epoch
  Amount contraction{};  // removed after a late epoch
  Amount cap   = no_credit_cap();
  Amount floor = Amount{};
};

/// New credit limit after an epoch outcome: grow (clamped to cap) on
/// conform, shrink (clamped to floor, never below zero) on late, zero on
/// default. Pure — the caller applies the result.
Amount credit_update(const BuyerAccount &account, CreditOutcome outcome,
                     const CreditPolicy &policy);

}  // namespace epochpay
