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

#include "epochpay/settlement.hpp"

#include "epochpay/leaf.hpp"

#include <algorithm>

namespace epochpay {

namespace {

struct PairKey
{
  AgentId buyer;
  AgentId merchant;

  friend auto operator<=>(const PairKey &, const PairKey &) = default;
};

}  // namespace

EpochSettlement settle_epoch(SettlementState                 &state,
                             const std::map<AgentId, Action> &actions,
                             std::span<const ProvenTx>        txs,
                             const Digest32                  &tx_root,
                             std::span<const AuctionFunding>  fundings,
                             std::span<const StakeSlash>      slashes,
                             const SettlementConfig          &config)
{
  // ---- Phase 1: validate everything before touching any state. ----------
  std::map<AgentId, std::vector<const Transaction *>> txs_by_buyer;
  std::map<AgentId, std::vector<const Transaction *>> txs_by_merchant;
  std::map<PairKey, Amount>                           owed_by_pair;

  for (auto const &proven : txs)
  {
    validate(proven.tx);
    if (proven.tx.epoch != state.epoch)
    {
      throw std::invalid_argument("settle_epoch: transaction epoch mismatch");
    }
    if (!verify_inclusion(tx_root, encode_tx_leaf(proven.tx), proven.proof))
    {
      throw UnprovenTransactionError(
          "settle_epoch: transaction failed inclusion verification");
    }
    auto buyer_it = state.buyers.find(proven.tx.buyer);
    if (buyer_it == state.buyers.end() || !buyer_it->second.account.alive)
    {
      throw std::invalid_argument("settle_epoch: unknown or dead buyer on tx");
    }
    auto merchant_it = state.merchants.find(proven.tx.merchant);
    if (merchant_it == state.merchants.end() ||
        !merchant_it->second.account.alive)
    {
      throw std::invalid_argument(
          "settle_epoch: unknown or dead merchant on tx");
    }
    txs_by_buyer[proven.tx.buyer].push_back(&proven.tx);
    txs_by_merchant[proven.tx.merchant].push_back(&proven.tx);
    owed_by_pair[PairKey{proven.tx.buyer, proven.tx.merchant}] +=
        proven.tx.payment;
  }

  std::map<AgentId, std::vector<const AuctionFunding *>> fundings_by_buyer;
  std::map<PairKey, Amount>                              funded_by_pair;
  for (auto const &funding : fundings)
  {
    if (funding.principal <= Amount{} || funding.fee < Amount{})
    {
      throw std::invalid_argument("settle_epoch: malformed auction funding");
    }
    if (!state.guarantors.contains(funding.guarantor) ||
        !state.buyers.contains(funding.buyer) ||
        !state.merchants.contains(funding.merchant))
    {
      throw std::invalid_argument(
          "settle_epoch: auction funding names unknown agent");
    }
    fundings_by_buyer[funding.buyer].push_back(&funding);
    funded_by_pair[PairKey{funding.buyer, funding.merchant}] +=
        funding.principal;
  }
  for (auto const &[pair, funded] : funded_by_pair)
  {
    auto owed = owed_by_pair.find(pair);
    if (owed == owed_by_pair.end() || funded > owed->second)
    {
      throw std::invalid_argument(
          "settle_epoch: auction funding exceeds the pair's obligations");
    }
  }

  for (auto const &slash : slashes)
  {
    auto it = state.guarantors.find(slash.guarantor);
    if (it == state.guarantors.end() || slash.amount < Amount{} ||
        slash.amount > it->second.stake)
    {
      throw std::invalid_argument("settle_epoch: invalid stake slash");
    }
  }

  auto action_for = [&](const AgentId &agent) -> Action {
    auto it = actions.find(agent);
    if (it == actions.end())
    {
      throw std::invalid_argument("settle_epoch: missing action for an agent");
    }
    return it->second;
  };
  for (auto const &[id, action] : actions)
  {
    bool is_buyer    = state.buyers.contains(id);
    bool is_merchant = state.merchants.contains(id);
    if (!is_buyer && !is_merchant)
    {
      throw std::invalid_argument("settle_epoch: action for unknown agent");
    }
    if (is_buyer)
    {
      if (!state.buyers.at(id).account.alive)
      {
        throw std::invalid_argument("settle_epoch: action for a dead buyer");
      }
      if (!std::holds_alternative<BuyerAction>(action))
      {
        throw std::invalid_argument("settle_epoch: merchant action on buyer");
      }
    }
    else
    {
      if (!state.merchants.at(id).account.alive)
      {
        throw std::invalid_argument(
            "settle_epoch: action for a dead merchant");
      }
      if (!std::holds_alternative<MerchantAction>(action))
      {
        throw std::invalid_argument("settle_epoch: buyer action on merchant");
      }
    }
  }
  // Agents may sit an epoch out (no action, no settlement effects), but an
  // agent that traded this epoch owes the protocol an action.
  for (auto const &[id, list] : txs_by_buyer)
  {
    (void)action_for(id);
  }
  for (auto const &[id, list] : txs_by_merchant)
  {
    (void)action_for(id);
  }

  // ---- Phase 2: apply. ----------------------------------------------------
  EpochSettlement result;
  result.epoch = state.epoch;

  auto pool_ref = [&](PoolKind pool) -> Amount & {
    return pool == PoolKind::Penalty ? state.penalty_pool : state.reward_pool;
  };
  auto cash_ref = [&](const AgentId &agent) -> Amount & {
    switch (agent.role)
    {
    case Role::Buyer:
      return state.buyers.at(agent).account.cash;
    case Role::Merchant:
      return state.merchants.at(agent).account.cash;
    case Role::Guarantor:
      return state.guarantors.at(agent).cash;
    }
    throw std::logic_error("settle_epoch: unreachable role");
  };
  // Moves `amount` between cash positions / pools and records the movement.
  // Zero-amount movements are dropped to keep traces readable.
  auto transfer = [&](Party from, Party to, Amount amount,
                      const char *label) {
    if (amount == Amount{})
    {
      return;
    }
    if (auto const *agent = std::get_if<AgentId>(&from))
    {
      cash_ref(*agent) -= amount;
    }
    else
    {
      pool_ref(std::get<PoolKind>(from)) -= amount;
    }
    if (auto const *agent = std::get_if<AgentId>(&to))
    {
      cash_ref(*agent) += amount;
    }
    else
    {
      pool_ref(std::get<PoolKind>(to)) += amount;
    }
    result.transfers.push_back(Transfer{from, to, amount, label});
  };

  // Buyers first (payments and repayments), merchants second (fees,
  // rewards, penalties), then auction slashes; each group in id order.
  for (auto &[id, bs] : state.buyers)
  {
    BuyerAccount &account = bs.account;
    if (!account.alive || !actions.contains(id))
    {
      continue;
    }
    BuyerAction action = std::get<BuyerAction>(action_for(id));

    AgentSettlement o;
    o.agent         = id;
    o.action        = action;
    o.credit_before = account.credit_limit;
    o.trust_before  = account.trust;
    o.phase_before  = account.phase;
    o.misuse_flag   = account.misuse_flag;
    bool suspended  = account.phase.rewards_suspended();

    auto txs_it = txs_by_buyer.find(id);
    auto span_txs =
        txs_it == txs_by_buyer.end()
            ? std::vector<const Transaction *>{}
            : txs_it->second;
    auto fundings_it = fundings_by_buyer.find(id);
    std::vector<const AuctionFunding *> span_fundings =
        fundings_it == fundings_by_buyer.end()
            ? std::vector<const AuctionFunding *>{}
            : fundings_it->second;
    std::int64_t ntx = static_cast<std::int64_t>(span_txs.size());

    if (action == BuyerAction::Default)
    {
      // The guarantor already paid the merchant during the epoch; that leg
      // stands. The buyer repays nothing and forfeits the entire stake.
      for (auto const *funding : span_fundings)
      {
        transfer(funding->guarantor, funding->merchant, funding->principal,
                 "auction_principal");
      }
      Amount confiscated = account.stake;
      account.stake = Amount{};
      account.cash += confiscated;  // release the stake into the flow ledger…
      transfer(id, PoolKind::Penalty, confiscated, "default_confiscation");
      o.paid_penalties += confiscated;  // …and hand it straight to the pool
      account.credit_limit = Amount{};
      account.used         = Amount{};
      account.funded       = Amount{};
      account.trust        = 0;
      account.alive        = false;
      account.phase = step_phase(account.phase, false, config.phase);
      o.defaulted   = true;
    }
    else
    {
      // Pay each merchant: the buyer covers obligations net of what
      // guarantors already fronted, then repays the guarantors with fee.
      std::map<AgentId, Amount> owed;
      for (auto const *tx : span_txs)
      {
        owed[tx->merchant] += tx->payment;
      }
      for (auto const *funding : span_fundings)
      {
        owed[funding->merchant] -= funding->principal;
        transfer(funding->guarantor, funding->merchant, funding->principal,
                 "auction_principal");
        transfer(id, funding->guarantor, funding->principal + funding->fee,
                 "auction_repayment");
      }
      for (auto const &[merchant, amount] : owed)
      {
        transfer(id, merchant, amount, "payment");
      }

      if (action == BuyerAction::PayLate)
      {
        transfer(id, PoolKind::Penalty, bs.terms.late_penalty_per_tx * ntx,
                 "late_penalty");
        o.paid_penalties += bs.terms.late_penalty_per_tx * ntx;
        if (!suspended)
        {
          transfer(PoolKind::Reward, id, bs.terms.stake_reward,
                   "stake_reward");
          o.received_rewards += bs.terms.stake_reward;
        }
        account.trust = std::max(account.trust - 1, 0);
      }
      else
      {
        if (!suspended)
        {
          transfer(PoolKind::Reward, id, bs.terms.timeliness_reward,
                   "timeliness_reward");
          transfer(PoolKind::Reward, id, bs.terms.stake_reward,
                   "stake_reward");
          o.received_rewards +=
              bs.terms.timeliness_reward + bs.terms.stake_reward;
        }
        account.trust = std::min(account.trust + 1, config.trust_max);
      }

      CreditPolicy policy;
      policy.growth      = suspended ? Amount{} : bs.terms.credit_reward;
      policy.contraction = bs.terms.credit_contraction;
      policy.cap         = config.credit_cap;
      account.credit_limit =
          credit_update(account, action == BuyerAction::PayOnTime
                                     ? CreditOutcome::Conform
                                     : CreditOutcome::Late,
                        policy);
      account.phase =
          step_phase(account.phase, action == BuyerAction::PayOnTime,
                     config.phase);
      account.used   = Amount{};
      account.funded = Amount{};
    }

    account.misuse_flag = false;
    o.credit_after      = account.credit_limit;
    o.trust_after       = account.trust;
    o.phase_after       = account.phase;
    result.outcomes.push_back(o);
  }

  for (auto &[id, ms] : state.merchants)
  {
    MerchantAccount &account = ms.account;
    if (!account.alive || !actions.contains(id))
    {
      continue;
    }
    MerchantAction action = std::get<MerchantAction>(action_for(id));

    AgentSettlement o;
    o.agent        = id;
    o.action       = action;
    o.trust_before = account.trust;
    o.phase_before = account.phase;
    bool suspended = account.phase.rewards_suspended();

    auto         txs_it = txs_by_merchant.find(id);
    std::int64_t ntx =
        txs_it == txs_by_merchant.end()
            ? 0
            : static_cast<std::int64_t>(txs_it->second.size());

    if (action == MerchantAction::FailToDeliver)
    {
      // Keeps the payments already received, pays the per-tx default
      // penalty out of stake (capped by what the stake holds), and exits.
      Amount penalty =
          std::min(ms.terms.default_penalty_per_tx * ntx, account.stake);
      account.stake -= penalty;
      account.cash += penalty;  // penalty is sourced from stake, not cash
      transfer(id, PoolKind::Penalty, penalty, "default_penalty");
      o.paid_penalties += penalty;
      account.trust = 0;
      account.alive = false;
      account.phase = step_phase(account.phase, false, config.phase);
      o.defaulted   = true;
    }
    else
    {
      transfer(id, PoolKind::Reward, ms.terms.fee_per_tx * ntx,
               "protocol_fee");
      if (!suspended)
      {
        transfer(PoolKind::Reward, id, ms.terms.freshness_reward_per_tx * ntx,
                 "freshness_reward");
        transfer(PoolKind::Reward, id, ms.terms.stake_reward, "stake_reward");
        o.received_rewards +=
            ms.terms.freshness_reward_per_tx * ntx + ms.terms.stake_reward;
      }
      if (action == MerchantAction::DeliverLate)
      {
        transfer(id, PoolKind::Penalty, ms.terms.late_penalty_per_tx * ntx,
                 "late_penalty");
        o.paid_penalties += ms.terms.late_penalty_per_tx * ntx;
        account.trust = std::max(account.trust - 1, 0);
      }
      else
      {
        account.trust = std::min(account.trust + 1, config.trust_max);
      }
      account.phase =
          step_phase(account.phase, action == MerchantAction::DeliverOnTime,
                     config.phase);
    }

    o.trust_after = account.trust;
    o.phase_after = account.phase;
    result.outcomes.push_back(o);
  }

  for (auto const &slash : slashes)
  {
    GuarantorAccount &g = state.guarantors.at(slash.guarantor);
    g.stake -= slash.amount;
    g.cash += slash.amount;  // slash is sourced from the locked stake
    transfer(slash.guarantor, PoolKind::Penalty, slash.amount, "bid_slash");
  }

  result.signal.epoch = state.epoch;
  for (auto const &o : result.outcomes)
  {
    AgentOutcome out;
    out.agent       = o.agent;
    out.action      = o.action;
    out.penalties   = o.paid_penalties;
    out.rewards     = o.received_rewards;
    out.trust_after = o.trust_after;
    out.phase_after = o.phase_after;
    out.misuse_flag = o.misuse_flag;
    out.defaulted   = o.defaulted;
    result.signal.outcomes.push_back(out);
  }

  state.epoch.index += 1;
  return result;
}

Amount total_system_value(const SettlementState &state)
{
  Amount total = state.penalty_pool + state.reward_pool;
  for (auto const &[id, bs] : state.buyers)
  {
    total += bs.account.cash + bs.account.stake;
  }
  for (auto const &[id, ms] : state.merchants)
  {
    total += ms.account.cash + ms.account.stake;
  }
  for (auto const &[id, g] : state.guarantors)
  {
    total += g.cash + g.stake;
  }
  return total;
}

}  // namespace epochpay
