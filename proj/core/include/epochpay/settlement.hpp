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

#include "epochpay/accounts.hpp"
#include "epochpay/actions.hpp"
#include "epochpay/ids.hpp"
#include "epochpay/merkle.hpp"
#include "epochpay/money.hpp"
#include "epochpay/signal.hpp"
#include "epochpay/tx.hpp"

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace epochpay {

/// Uniform per-transaction and per-epoch monetary terms for one merchant.
struct MerchantTerms
{
  Amount fee_per_tx{};               // protocol fee, paid into the reward pool
  Amount exec_cost_per_tx{};         // utility-only: cost of serving
  Amount freshness_reward_per_tx{};  // paid from the reward pool when timely
  Amount spoilage_per_tx{};          // utility-only: alternative-use value
  Amount late_penalty_per_tx{};      // paid into the penalty pool when late
  Amount default_penalty_per_tx{};   // slashed from stake on failure
  Amount stake_reward{};             // epoch reward on posted stake
  Amount stake_cost{};               // utility-only: stake carrying cost
};

/// Uniform per-epoch monetary terms for one buyer.
struct BuyerTerms
{
  Amount timeliness_reward{};    // paid from the reward pool when on time
  Amount stake_reward{};         // paid from the reward pool every live epoch
  Amount stake_cost{};           // utility-only
  Amount financing_cost{};       // utility-only: cost of financing a cure
  Amount late_penalty_per_tx{};  // paid into the penalty pool when late
  Amount spoilage_per_tx{};      // utility-only
  Amount credit_reward{};        // credit-limit growth on conform
  Amount credit_contraction{};   // credit-limit shrinkage on late
  Ratio  credit_weight{};        // ω, used by utility accounting downstream
};

struct BuyerState
{
  BuyerAccount account;
  BuyerTerms   terms;
};

struct MerchantState
{
  MerchantAccount account;
  MerchantTerms   terms;
};

struct SettlementConfig
{
  PhaseConfig phase{};
  int         trust_max = 100;
  Ratio       risk_bound{1, 4};  // admissible over-limit fraction of CL
  Amount      credit_cap = no_credit_cap();
  Hours       cure_window{1};
};

/// Whole-system monetary state. Maps keep agents in id order, which fixes
/// the settlement iteration order and hence the signal layout.
struct SettlementState
{
  std::map<AgentId, BuyerState>       buyers;
  std::map<AgentId, MerchantState>    merchants;
  std::map<AgentId, GuarantorAccount> guarantors;
  Amount                              penalty_pool{};
  Amount                              reward_pool{};
  EpochIndex                          epoch{};
};

/// Counterparty of a transfer: an agent or one of the protocol pools.
enum class PoolKind
{
  Penalty,
  Reward,
};

using Party = std::variant<AgentId, PoolKind>;

/// One double-entry money movement. Settlement emits nothing but these, so
/// conservation is checkable by construction: every transfer debits exactly
/// what it credits.
struct Transfer
{
  Party       from;
  Party       to;
  Amount      amount{};
  std::string label;
};

/// A transaction together with its verified inclusion evidence; settlement
/// refuses to count anything that fails verification against the committed
/// root ("no protocol effect").
struct ProvenTx
{
  Transaction    tx;
  InclusionProof proof;
};

/// An over-limit deficit funded by a guarantor during the epoch: the
/// guarantor pays the merchant `principal` directly, and the buyer owes the
/// guarantor `principal + fee` at settlement (forfeited if the buyer
/// defaults — that is the guarantor's risk).
struct AuctionFunding
{
  AgentId guarantor{};
  AgentId buyer{};
  AgentId merchant{};
  Amount  principal{};
  Amount  fee{};
};

/// A guarantor stake slashed at auction settlement (unrevealed or
/// mismatched commitment); proceeds go to the penalty pool.
struct StakeSlash
{
  AgentId guarantor{};
  Amount  amount{};
};

struct AgentSettlement
{
  AgentId      agent{};
  Action       action = BuyerAction::PayOnTime;
  Amount       paid_penalties{};    // into the penalty pool
  Amount       received_rewards{};  // out of the reward pool
  Amount       credit_before{};
  Amount       credit_after{};
  int          trust_before = 0;
  int          trust_after  = 0;
  PenaltyPhase phase_before{};
  PenaltyPhase phase_after{};
  bool         defaulted   = false;
  bool         misuse_flag = false;
};

struct EpochSettlement
{
  EpochIndex                   epoch{};
  std::vector<AgentSettlement> outcomes;
  std::vector<Transfer>        transfers;
  PublicSignal                 signal;
};

class UnprovenTransactionError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Settles one epoch atomically: verifies every transaction against
/// `tx_root`, moves money (payments, fees, rewards, penalties, auction
/// repayments, slashes), steps trust/phase/credit state, and emits the
/// public signal. Dead agents are skipped entirely; alive agents absent
/// from `actions` are bystanders — they sit the epoch out with zero effect,
/// though an agent that traded this epoch must act. The state's epoch
/// counter advances by one. Throws UnprovenTransactionError when any
/// transaction fails proof verification, std::invalid_argument on
/// inconsistent inputs; on throw the state is untouched.
EpochSettlement settle_epoch(SettlementState                 &state,
                             const std::map<AgentId, Action> &actions,
                             std::span<const ProvenTx>        txs,
                             const Digest32                  &tx_root,
                             std::span<const AuctionFunding>  fundings,
                             std::span<const StakeSlash>      slashes,
                             const SettlementConfig          &config);

/// Σ over all agents of (cash + stake) plus both pools — the conserved
/// quantity: settle_epoch never changes it.
Amount total_system_value(const SettlementState &state);

}  // namespace epochpay
