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
//
// Shared fixtures and adapters between the library under test and the
// independent oracle. Only plumbing lives here — every reference value is
// computed in oracle.hpp or written out literally in the tests.

#include "oracle.hpp"

#include <epochpay/incentives.hpp>
#include <epochpay/money.hpp>
#include <epochpay/ratio.hpp>
#include <epochpay/sim.hpp>

#include <cstdint>
#include <vector>

namespace support {

using epochpay::Amount;
using epochpay::Ratio;

inline Amount units(std::int64_t n)
{
  return Amount::from_units(n);
}

/// Library rational → oracle rational (same backing type, so comparisons
/// after this conversion are bit-exact).
inline oracle::Rat rat(const Ratio &r)
{
  return r.value();
}

inline oracle::Int micro(Amount a)
{
  return oracle::Int(a.micro());
}

inline oracle::Rat rat_units(Amount a)
{
  return oracle::units_from_micro(micro(a));
}

inline std::vector<Amount> amounts(std::initializer_list<std::int64_t> xs)
{
  std::vector<Amount> out;
  for (std::int64_t x : xs)
  {
    out.push_back(units(x));
  }
  return out;
}

/// The worked merchant parameter set used throughout the tests:
/// one transaction, v=100, fee=1, exec=2, freshness reward 3, spoilage 2,
/// late penalty 6, default penalty 20; stake reward 5, stake cost 4,
/// liability cap 2.
inline epochpay::incentives::MerchantParams canonical_merchant()
{
  epochpay::incentives::MerchantParams p;
  p.payments          = amounts({100});
  p.fees              = amounts({1});
  p.exec_costs        = amounts({2});
  p.freshness_rewards = amounts({3});
  p.spoilages         = amounts({2});
  p.late_penalties    = amounts({6});
  p.default_penalties = amounts({20});
  p.stake_reward      = units(5);
  p.stake_cost        = units(4);
  p.liability_cap     = units(2);
  p.punishment_epochs = 3;
  p.loss_floor        = Amount{};
  p.discount          = Ratio{4, 5};
  return p;
}

/// The worked buyer parameter set: one transaction, w=120, v=100,
/// spoilage 3, late penalty 5; timeliness reward 2, stake reward 1, stake
/// cost 1, financing cost 2, credit growth 4, credit contraction 4,
/// credit limit 50, stake 30, ω = 1/2, exposure bound 100, opportunity
/// rate 5 % (50,000 ppm), δ = 4/5, T = 3.
inline epochpay::incentives::BuyerParams canonical_buyer()
{
  epochpay::incentives::BuyerParams p;
  p.service_values     = amounts({120});
  p.payments           = amounts({100});
  p.spoilages          = amounts({3});
  p.late_penalties     = amounts({5});
  p.timeliness_reward  = units(2);
  p.stake_reward       = units(1);
  p.stake_cost         = units(1);
  p.financing_cost     = units(2);
  p.credit_reward      = units(4);
  p.credit_contraction = units(4);
  p.credit_limit       = units(50);
  p.stake              = units(30);
  p.credit_weight      = Ratio{1, 2};
  p.max_exposure       = units(100);
  p.punishment_epochs  = 3;
  p.discount           = Ratio{4, 5};
  p.opportunity_rate   = epochpay::Rate{50'000};
  return p;
}

inline oracle::MerchantIn
to_oracle(const epochpay::incentives::MerchantParams &p)
{
  oracle::MerchantIn in;
  for (Amount a : p.payments)
  {
    in.payments.push_back(micro(a));
  }
  for (Amount a : p.fees)
  {
    in.fees.push_back(micro(a));
  }
  for (Amount a : p.exec_costs)
  {
    in.exec_costs.push_back(micro(a));
  }
  for (Amount a : p.freshness_rewards)
  {
    in.freshness_rewards.push_back(micro(a));
  }
  for (Amount a : p.spoilages)
  {
    in.spoilages.push_back(micro(a));
  }
  for (Amount a : p.late_penalties)
  {
    in.late_penalties.push_back(micro(a));
  }
  for (Amount a : p.default_penalties)
  {
    in.default_penalties.push_back(micro(a));
  }
  in.stake_reward = micro(p.stake_reward);
  in.stake_cost   = micro(p.stake_cost);
  return in;
}

inline oracle::BuyerIn to_oracle(const epochpay::incentives::BuyerParams &p)
{
  oracle::BuyerIn in;
  for (Amount a : p.service_values)
  {
    in.service_values.push_back(micro(a));
  }
  for (Amount a : p.payments)
  {
    in.payments.push_back(micro(a));
  }
  for (Amount a : p.spoilages)
  {
    in.spoilages.push_back(micro(a));
  }
  for (Amount a : p.late_penalties)
  {
    in.late_penalties.push_back(micro(a));
  }
  in.timeliness_reward  = micro(p.timeliness_reward);
  in.stake_reward       = micro(p.stake_reward);
  in.stake_cost         = micro(p.stake_cost);
  in.financing_cost     = micro(p.financing_cost);
  in.credit_reward      = micro(p.credit_reward);
  in.credit_contraction = micro(p.credit_contraction);
  in.credit_limit       = micro(p.credit_limit);
  in.stake              = micro(p.stake);
  in.credit_weight      = rat(p.credit_weight);
  return in;
}

/// A ready-to-run one-pair scenario around the canonical parameter sets.
/// The merchant posts a 40-unit stake; both sides conform by default.
inline epochpay::sim::ScenarioConfig canonical_scenario(int horizon,
                                                        const Ratio &discount)
{
  epochpay::sim::ScenarioConfig config;
  config.horizon  = horizon;
  config.discount = discount;

  epochpay::sim::PairSpec pair;
  pair.buyer_name     = "buyer";
  pair.merchant_name  = "merchant";
  pair.buyer          = canonical_buyer();
  pair.merchant       = canonical_merchant();
  // The live credit line must cover the epoch batch — and keep covering it
  // after one late-payment contraction (P_CB = 4) — or authorization drops
  // the trade and a deviation measurement would conflate the reward
  // suspension with credit starvation.
  pair.buyer.credit_limit = units(104);
  pair.buyer.discount = discount;
  pair.merchant.discount = discount;
  pair.merchant_stake = units(40);
  config.pairs.push_back(pair);
  return config;
}

}  // namespace support
