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

#include "epochpay/auction.hpp"
#include "epochpay/incentives.hpp"
#include "epochpay/settlement.hpp"
#include "epochpay/strategy.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace epochpay::sim {

/// A stake-backed guarantor available to over-limit auctions.
struct GuarantorSpec
{
  std::string name;
  Amount      stake{};
};

/// One guarantor's scripted behaviour in an over-limit auction. A bid that
/// is never revealed, or revealed with a corrupted nonce, forfeits the
/// locked stake — both misbehaviours are expressible so scenarios can
/// exercise the slashing paths.
struct ScriptedBid
{
  std::string guarantor;
  Rate        rate{};
  bool        reveal        = true;
  bool        corrupt_nonce = false;
};

/// Auction behaviour applied whenever a buyer goes over-limit: the buyer's
/// rate cap and the bids the guarantor population would place.
struct AuctionScript
{
  Rate                     cap{};
  std::vector<ScriptedBid> bids;
};

/// One bilateral trading relationship. The per-transaction lists inside the
/// two parameter sets define the pair's epoch batch; the engine replays that
/// batch every epoch the pair trades. Monetary terms that settlement moves
/// (fees, rewards, penalties) must be uniform across the batch; payments and
/// service values may vary per transaction.
struct PairSpec
{
  std::string                buyer_name;
  std::string                merchant_name;
  incentives::BuyerParams    buyer;
  incentives::MerchantParams merchant;
  Amount                     merchant_stake{};
  Strategy                   buyer_strategy    = AlwaysConform{};
  Strategy                   merchant_strategy = AlwaysConform{};
};

struct ScenarioConfig
{
  int              horizon = 1;  // epochs to simulate
  Ratio            discount{};   // δ for discounted totals, 0 ≤ δ < 1
  SettlementConfig settlement{};

  std::vector<PairSpec>        pairs;
  std::vector<GuarantorSpec>   guarantors;
  std::optional<AuctionScript> auction;
};

/// What one over-limit auction did during an epoch.
struct AuctionRecord
{
  AgentId                      buyer{};
  Amount                       deficit{};
  Rate                         cap{};
  bool                         cleared = false;
  AgentId                      winner{};         // meaningful iff cleared
  Rate                         clearing_rate{};  // meaningful iff cleared
  Amount                       fee{};            // meaningful iff cleared
  std::vector<GuarantorResult> stakes;
};

/// One agent's epoch in the trace. Stage utility is exact (units) and
/// reconstructs the utility rows of the incentive module from realized
/// flows: wealth delta plus the utility-only terms (service value, spoilage,
/// execution cost, carrying costs, ω-weighted credit capacity change).
/// Agents that sat the epoch out (withdrawn or dead) have zero stage
/// utility and participated = false.
struct AgentEpochRecord
{
  AgentId               agent{};
  std::string           name;
  bool                  participated = false;
  std::optional<Action> action;
  Ratio                 stage_utility;
  Amount                wealth_delta{};  // Δ(cash + stake), exact micro
  PenaltyPhase          phase_after{};
  int                   trust_after = 0;
  bool                  alive_after = true;
};

struct EpochRecord
{
  EpochIndex                    epoch{};
  std::vector<AgentEpochRecord> agents;  // pairs in config order, then guarantors
  PublicSignal                  signal;
  std::vector<Transfer>         transfers;
  std::vector<AuctionRecord>    auctions;
  std::size_t                   dropped_txs = 0;  // authorization failures
  Amount                        system_value{};   // conserved total after settling
};

/// Discounted per-agent totals over the simulated horizon, with an explicit
/// bound on what the truncated tail could still contribute.
struct AgentTotals
{
  AgentId     agent{};
  std::string name;
  Ratio       discounted_total;  // Σ_{e<H} δ^e · u_e
  Ratio       tail_bound;        // δ^H · max_e |u_e| / (1−δ)
};

struct EpochTrace
{
  std::vector<EpochRecord> epochs;
  std::vector<AgentTotals> totals;
  Amount                   initial_system_value{};
  bool                     conserved = true;
};

/// Runs the full vertical stack for `horizon` epochs: strategies pick
/// actions, payments clear authorization (over-limit deficits go to the
/// scripted auction; rejected requests have no protocol effect), leaves are
/// committed to per-epoch Merkle roots on the append-only ledger, inclusion
/// proofs accompany every settled transaction, and settlement moves the
/// money and steps the trust machinery. Deterministic: same config, same
/// trace, bit for bit. Throws std::invalid_argument on malformed configs.
EpochTrace run_scenario(const ScenarioConfig &config);

/// Gain from one deviation at the scan epoch, discounted to that epoch.
/// Buyer default uses the worst-case closed form
///   (v_max − stake) − δ·ū/(1−δ)
/// (flagged analytic); every other deviation is measured by differencing
/// two engine runs — deviation minus baseline — with an analytic tail
/// correction beyond the simulated horizon.
struct DeviationGain
{
  Action action;
  Ratio  gain;
  bool   analytic = false;
};

/// One-shot deviation scan for the named buyer or merchant at `epoch`: all
/// other agents play the equilibrium path (AlwaysConform). Conforming is a
/// best response at this epoch iff every returned gain is ≤ 0.
std::vector<DeviationGain> one_shot_deviation_scan(const ScenarioConfig &config,
                                                   const std::string &agent_name,
                                                   std::uint64_t      epoch);

struct SweepRow
{
  Ratio delta;
  Ratio default_gain;
  bool  conform_best = false;
};

/// Discount-factor sweep for the first pair's buyer: the one-shot default
/// gain on a grid {0, step, 2·step, …} ∩ [0, 1), the first grid point where
/// conforming becomes a best response, and the analytic threshold δ̲ for
/// cross-checking. Grid points are evaluated concurrently and merged in
/// grid order, so the result is deterministic.
struct SweepResult
{
  std::vector<SweepRow>      rows;
  std::optional<Ratio>       empirical_threshold;
  incentives::ThresholdResult analytic;
};

SweepResult sweep_delta(const ScenarioConfig &config, const Ratio &step);

}  // namespace epochpay::sim
