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

#include "epochpay/accounts.hpp"

#include <algorithm>

namespace epochpay {

AuthorizationResult authorize_payment(BuyerAccount &account, Amount amount,
                                      const Ratio &risk_bound)
{
  if (!account.alive)
  {
    throw std::logic_error("authorize_payment: account is not alive");
  }
  if (amount <= Amount{})
  {
    throw std::invalid_argument("authorize_payment: amount must be positive");
  }
  if (risk_bound.is_negative())
  {
    throw std::invalid_argument("authorize_payment: negative risk bound");
  }
  Amount after = account.used + amount;
  if (after <= account.credit_limit)
  {
    account.used = after;
    return Approved{};
  }
  Amount deficit = after - account.credit_limit;
  if (Ratio::from_amount(deficit) <=
      risk_bound * Ratio::from_amount(account.credit_limit))
  {
    return OverLimit{deficit};
  }
  account.misuse_flag = true;
  return RejectedMisuse{};
}

Amount credit_update(const BuyerAccount &account, CreditOutcome outcome,
                     const CreditPolicy &policy)
{
  if (!account.alive)
  {
    throw std::logic_error("credit_update: account is not alive");
  }
  switch (outcome)
  {
  case CreditOutcome::Conform:
    return std::min(account.credit_limit + policy.growth, policy.cap);
  case CreditOutcome::Late:
  {
    Amount floor = std::max(policy.floor, Amount{});
    if (account.credit_limit <= policy.contraction + floor)
    {
      return floor;
    }
    return account.credit_limit - policy.contraction;
  }
  case CreditOutcome::Default:
    return Amount{};
  }
  return account.credit_limit;
}

}  // namespace epochpay
