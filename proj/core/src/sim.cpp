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

#include "epochpay/sim.hpp"

#include "epochpay/leaf.hpp"
#include "epochpay/ledger.hpp"
#include "epochpay/merkle.hpp"

#include <algorithm>
#include <cstring>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <thread>
#include <utility>

namespace epochpay::sim {

namespace {

void put_u64_be(std::uint8_t *out, std::uint64_t value)
{
  for (int i = 7; i >= 0; --i)
  {
    out[i] = static_cast<std::uint8_t>(value & 0xffu);
    value >>= 8;
  }
}

Id32 tx_id(const AgentId &buyer, const AgentId &merchant, EpochIndex epoch,
           std::size_t k)
{
  static constexpr char kTag[] = "epochpay.tx.v1";
  std::array<std::uint8_t, 16> trailer{};
  put_u64_be(trailer.data(), epoch.index);
  put_u64_be(trailer.data() + 8, static_cast<std::uint64_t>(k));

  std::array<std::span<const std::uint8_t>, 4> parts = {
      std::span<const std::uint8_t>(
          reinterpret_cast<const std::uint8_t *>(kTag), sizeof kTag - 1),
      std::span<const std::uint8_t>(buyer.id),
      std::span<const std::uint8_t>(merchant.id),
      std::span<const std::uint8_t>(trailer),
  };
  return sha256_concat(parts);
}

Nonce32 bid_nonce(const std::string &guarantor_name, EpochIndex epoch,
                  bool corrupt)
{
  static constexpr char kTag[]        = "epochpay.bid-nonce.v1";
  static constexpr char kCorruptTag[] = "epochpay.bid-nonce.corrupt.v1";
  std::array<std::uint8_t, 8> epoch_be{};
  put_u64_be(epoch_be.data(), epoch.index);

  std::array<std::span<const std::uint8_t>, 3> parts = {
      corrupt ? std::span<const std::uint8_t>(
                    reinterpret_cast<const std::uint8_t *>(kCorruptTag),
                    sizeof kCorruptTag - 1)
              : std::span<const std::uint8_t>(
                    reinterpret_cast<const std::uint8_t *>(kTag),
                    sizeof kTag - 1),
      std::span<const std::uint8_t>(
          reinterpret_cast<const std::uint8_t *>(guarantor_name.data()),
          guarantor_name.size()),
      std::span<const std::uint8_t>(epoch_be),
  };
  return sha256_concat(parts);
}

/// Monetary terms settlement moves must not vary inside the batch — payments
/// and service values may, everything the contract meters per transaction
/// may not (it charges term × count).
Amount uniform_term(const std::vector<Amount> &xs, const char *what)
{
  if (xs.empty())
  {
    return Amount{};
  }
  for (auto const &x : xs)
  {
    if (x != xs.front())
    {
      throw std::invalid_argument(
          std::string{"scenario: per-transaction "} + what +
          " must be uniform across the epoch batch");
    }
  }
  return xs.front();
}

MerchantTerms settlement_terms(const incentives::MerchantParams &p)
{
  MerchantTerms t;
  t.fee_per_tx        = uniform_term(p.fees, "fees");
  t.exec_cost_per_tx  = uniform_term(p.exec_costs, "execution costs");
  t.freshness_reward_per_tx =
      uniform_term(p.freshness_rewards, "freshness rewards");
  t.spoilage_per_tx     = uniform_term(p.spoilages, "spoilage values");
  t.late_penalty_per_tx = uniform_term(p.late_penalties, "late penalties");
  t.default_penalty_per_tx =
      uniform_term(p.default_penalties, "default penalties");
  t.stake_reward = p.stake_reward;
  t.stake_cost   = p.stake_cost;
  return t;
}

BuyerTerms settlement_terms(const incentives::BuyerParams &p)
{
  BuyerTerms t;
  t.timeliness_reward   = p.timeliness_reward;
  t.stake_reward        = p.stake_reward;
  t.stake_cost          = p.stake_cost;
  t.financing_cost      = p.financing_cost;
  t.late_penalty_per_tx = uniform_term(p.late_penalties, "late penalties");
  t.spoilage_per_tx     = uniform_term(p.spoilages, "spoilage values");
  t.credit_reward       = p.credit_reward;
  t.credit_contraction  = p.credit_contraction;
  t.credit_weight       = p.credit_weight;
  return t;
}

struct PairRuntime
{
  const PairSpec *spec = nullptr;
  AgentId         buyer{};
  AgentId         merchant{};
};

class Engine
{
public:
  explicit Engine(const ScenarioConfig &config) : config_{config}
  {
    validate_config();

    for (auto const &pair : config_.pairs)
    {
      PairRuntime pr;
      pr.spec     = &pair;
      pr.buyer    = AgentId{id_from_name(pair.buyer_name), Role::Buyer};
      pr.merchant = AgentId{id_from_name(pair.merchant_name), Role::Merchant};
      register_name(pr.buyer, pair.buyer_name);
      register_name(pr.merchant, pair.merchant_name);

      BuyerState bs;
      bs.account.stake        = pair.buyer.stake;
      bs.account.credit_limit = pair.buyer.credit_limit;
      bs.terms                = settlement_terms(pair.buyer);
      state_.buyers.emplace(pr.buyer, std::move(bs));

      MerchantState ms;
      ms.account.stake = pair.merchant_stake;
      ms.terms         = settlement_terms(pair.merchant);
      state_.merchants.emplace(pr.merchant, std::move(ms));

      pairs_.push_back(pr);
      order_.push_back(pr.buyer);
      order_.push_back(pr.merchant);
    }
    for (auto const &g : config_.guarantors)
    {
      AgentId gid{id_from_name(g.name), Role::Guarantor};
      register_name(gid, g.name);
      GuarantorAccount account;
      account.stake = g.stake;
      state_.guarantors.emplace(gid, account);
      order_.push_back(gid);
    }
    if (config_.auction)
    {
      for (auto const &bid : config_.auction->bids)
      {
        AgentId gid{id_from_name(bid.guarantor), Role::Guarantor};
        if (!state_.guarantors.contains(gid))
        {
          throw std::invalid_argument(
              "scenario: auction script names unknown guarantor '" +
              bid.guarantor + "'");
        }
      }
    }
  }

  EpochTrace run()
  {
    EpochTrace trace;
    trace.initial_system_value = total_system_value(state_);
    for (int e = 0; e < config_.horizon; ++e)
    {
      trace.epochs.push_back(run_epoch(EpochIndex{static_cast<std::uint64_t>(e)}));
      if (trace.epochs.back().system_value != trace.initial_system_value)
      {
        trace.conserved = false;
      }
    }
    accumulate_totals(trace);
    return trace;
  }

private:
  void validate_config()
  {
    if (config_.horizon < 1)
    {
      throw std::invalid_argument("scenario: horizon must be at least 1");
    }
    if (config_.discount < Ratio{} || !(config_.discount < Ratio::from_int(1)))
    {
      throw std::invalid_argument("scenario: discount must satisfy 0 <= d < 1");
    }
    std::set<std::string> names;
    auto claim_name = [&](const std::string &name) {
      if (name.empty())
      {
        throw std::invalid_argument("scenario: agent names must be non-empty");
      }
      if (!names.insert(name).second)
      {
        throw std::invalid_argument("scenario: duplicate agent name '" + name +
                                    "'");
      }
    };
    for (auto const &pair : config_.pairs)
    {
      claim_name(pair.buyer_name);
      claim_name(pair.merchant_name);
      incentives::validate(pair.buyer);
      incentives::validate(pair.merchant);
      if (pair.merchant.payments != pair.buyer.payments)
      {
        throw std::invalid_argument(
            "scenario: buyer and merchant payment lists must agree for a pair");
      }
      if (pair.merchant_stake < Amount{})
      {
        throw std::invalid_argument(
            "scenario: merchant stake must be non-negative");
      }
    }
    for (auto const &g : config_.guarantors)
    {
      claim_name(g.name);
      if (g.stake < Amount{})
      {
        throw std::invalid_argument(
            "scenario: guarantor stake must be non-negative");
      }
    }
  }

  void register_name(const AgentId &agent, const std::string &name)
  {
    names_.emplace(agent, name);
  }

  struct TxMeta
  {
    const PairRuntime *pair = nullptr;
    std::size_t        k    = 0;  // index into the pair's per-tx lists
  };

  EpochRecord run_epoch(EpochIndex e)
  {
    EpochRecord rec;
    rec.epoch = e;

    // 1. Strategies pick actions from the public history. A nullopt decision
    //    (grim withdrawal) keeps the agent out of this epoch entirely.
    std::map<AgentId, Action>        actions;
    std::vector<const PairRuntime *> trading;
    for (auto const &pr : pairs_)
    {
      bool buyer_alive    = state_.buyers.at(pr.buyer).account.alive;
      bool merchant_alive = state_.merchants.at(pr.merchant).account.alive;
      std::optional<Action> buyer_action;
      std::optional<Action> merchant_action;
      if (buyer_alive)
      {
        buyer_action =
            decide(pr.spec->buyer_strategy, Role::Buyer, history_, e);
        if (buyer_action)
        {
          actions.emplace(pr.buyer, *buyer_action);
        }
      }
      if (merchant_alive)
      {
        merchant_action =
            decide(pr.spec->merchant_strategy, Role::Merchant, history_, e);
        if (merchant_action)
        {
          actions.emplace(pr.merchant, *merchant_action);
        }
      }
      if (buyer_action && merchant_action)
      {
        trading.push_back(&pr);
      }
    }

    // 2. The epoch's transactions, gated by credit authorization. Over-limit
    //    deficits go to the scripted auction (at most one per buyer per
    //    epoch); anything unfunded is dropped with no protocol effect.
    std::vector<Transaction>    txs;
    std::vector<TxMeta>         meta;
    std::vector<AuctionFunding> fundings;
    std::vector<StakeSlash>     slashes;
    std::set<AgentId>           auction_attempted;
    for (auto const *pr : trading)
    {
      BuyerAccount &account = state_.buyers.at(pr->buyer).account;
      const incentives::BuyerParams &bp = pr->spec->buyer;
      for (std::size_t k = 0; k < bp.payments.size(); ++k)
      {
        Amount payment = bp.payments[k];
        AuthorizationResult auth = authorize_payment(
            account, payment, config_.settlement.risk_bound);
        bool accepted = std::holds_alternative<Approved>(auth);
        if (auto const *over = std::get_if<OverLimit>(&auth))
        {
          if (fund_over_limit(*pr, *over, e, fundings, slashes, rec,
                              auction_attempted))
          {
            account.used = account.credit_limit;
            account.funded += over->deficit;
            accepted = true;
          }
        }
        if (!accepted)
        {
          rec.dropped_txs += 1;
          continue;
        }
        Transaction tx;
        tx.id            = tx_id(pr->buyer, pr->merchant, e, k);
        tx.buyer         = pr->buyer;
        tx.merchant      = pr->merchant;
        tx.payment       = payment;
        tx.service_value = bp.service_values[k];
        tx.epoch         = e;
        txs.push_back(tx);
        meta.push_back(TxMeta{pr, k});
      }
    }

    // 3. Commit the epoch's roots to the append-only ledger.
    std::vector<LeafRecord> tx_leaves;
    tx_leaves.reserve(txs.size());
    for (auto const &tx : txs)
    {
      tx_leaves.push_back(encode_tx_leaf(tx));
    }
    std::optional<MerkleTree> tx_tree;
    Digest32                  tx_root = MerkleTree::empty_root();
    if (!tx_leaves.empty())
    {
      tx_tree = MerkleTree::build(tx_leaves);
      tx_root = tx_tree->root();
    }

    std::vector<LeafRecord> credit_leaves;
    for (auto const &[id, bs] : state_.buyers)
    {
      if (bs.account.alive)
      {
        credit_leaves.push_back(encode_credit_leaf(
            id, bs.account.credit_limit - bs.account.used, e));
      }
    }
    Digest32 credit_root = MerkleTree::empty_root();
    if (!credit_leaves.empty())
    {
      credit_root = MerkleTree::build(credit_leaves).root();
    }

    Hours now = epoch_end(e);
    SubmitResult tx_submit = ledger_.submit(e, RootKind::TxRoot, tx_root, now);
    SubmitResult credit_submit =
        ledger_.submit(e, RootKind::CreditRoot, credit_root, now);
    if (!tx_submit.accepted || !credit_submit.accepted)
    {
      throw std::logic_error(
          "scenario engine: ledger rejected an in-window root");
    }

    // 4. Settlement consumes only proof-carrying transactions.
    std::vector<ProvenTx> proven;
    proven.reserve(txs.size());
    for (std::size_t i = 0; i < txs.size(); ++i)
    {
      proven.push_back(ProvenTx{txs[i], tx_tree->prove(i)});
    }

    std::map<AgentId, Amount> wealth_before;
    for (auto const &[id, bs] : state_.buyers)
    {
      wealth_before[id] = bs.account.cash + bs.account.stake;
    }
    for (auto const &[id, ms] : state_.merchants)
    {
      wealth_before[id] = ms.account.cash + ms.account.stake;
    }
    for (auto const &[id, g] : state_.guarantors)
    {
      wealth_before[id] = g.cash + g.stake;
    }

    EpochSettlement settled =
        settle_epoch(state_, actions, proven, tx_root, fundings, slashes,
                     config_.settlement);
    history_.push_back(settled.signal);
    rec.signal    = settled.signal;
    rec.transfers = std::move(settled.transfers);

    // 5. Stage utilities: realized wealth change plus the utility-only terms.
    std::map<AgentId, const AgentSettlement *> outcome_of;
    for (auto const &o : settled.outcomes)
    {
      outcome_of.emplace(o.agent, &o);
    }
    std::map<const PairRuntime *, std::vector<std::size_t>> accepted;
    for (std::size_t i = 0; i < meta.size(); ++i)
    {
      accepted[meta[i].pair].push_back(meta[i].k);
    }

    auto wealth_now = [&](const AgentId &id) -> Amount {
      switch (id.role)
      {
      case Role::Buyer:
      {
        auto const &a = state_.buyers.at(id).account;
        return a.cash + a.stake;
      }
      case Role::Merchant:
      {
        auto const &a = state_.merchants.at(id).account;
        return a.cash + a.stake;
      }
      case Role::Guarantor:
      {
        auto const &a = state_.guarantors.at(id);
        return a.cash + a.stake;
      }
      }
      throw std::logic_error("scenario engine: unreachable role");
    };

    for (auto const &pr : pairs_)
    {
      const incentives::BuyerParams    &bp = pr.spec->buyer;
      const incentives::MerchantParams &mp = pr.spec->merchant;
      const std::vector<std::size_t>   *ks = nullptr;
      if (auto it = accepted.find(&pr); it != accepted.end())
      {
        ks = &it->second;
      }

      AgentEpochRecord buyer_rec;
      buyer_rec.agent        = pr.buyer;
      buyer_rec.name         = pr.spec->buyer_name;
      buyer_rec.wealth_delta = wealth_now(pr.buyer) - wealth_before[pr.buyer];
      if (auto it = actions.find(pr.buyer); it != actions.end())
      {
        BuyerAction action     = std::get<BuyerAction>(it->second);
        buyer_rec.participated = true;
        buyer_rec.action       = it->second;

        Ratio stage = Ratio::from_amount(buyer_rec.wealth_delta);
        if (ks != nullptr)
        {
          MerchantAction merchant_action =
              std::get<MerchantAction>(actions.at(pr.merchant));
          for (std::size_t k : *ks)
          {
            if (merchant_action != MerchantAction::FailToDeliver)
            {
              stage += Ratio::from_amount(bp.service_values[k]);
            }
            if (action != BuyerAction::PayOnTime)
            {
              stage += Ratio::from_amount(bp.spoilages[k]);
            }
          }
        }
        if (action == BuyerAction::PayLate)
        {
          stage -= Ratio::from_amount(bp.financing_cost);
        }
        stage -= Ratio::from_amount(bp.stake_cost);
        const AgentSettlement *o = outcome_of.at(pr.buyer);
        stage += bp.credit_weight * (Ratio::from_amount(o->credit_after) -
                                     Ratio::from_amount(o->credit_before));
        buyer_rec.stage_utility = stage;
      }
      auto const &ba        = state_.buyers.at(pr.buyer).account;
      buyer_rec.phase_after = ba.phase;
      buyer_rec.trust_after = ba.trust;
      buyer_rec.alive_after = ba.alive;
      rec.agents.push_back(std::move(buyer_rec));

      AgentEpochRecord merchant_rec;
      merchant_rec.agent = pr.merchant;
      merchant_rec.name  = pr.spec->merchant_name;
      merchant_rec.wealth_delta =
          wealth_now(pr.merchant) - wealth_before[pr.merchant];
      if (auto it = actions.find(pr.merchant); it != actions.end())
      {
        MerchantAction action     = std::get<MerchantAction>(it->second);
        merchant_rec.participated = true;
        merchant_rec.action       = it->second;

        Ratio stage = Ratio::from_amount(merchant_rec.wealth_delta);
        if (ks != nullptr)
        {
          for (std::size_t k : *ks)
          {
            if (action != MerchantAction::FailToDeliver)
            {
              stage -= Ratio::from_amount(mp.exec_costs[k]);
            }
            if (action != MerchantAction::DeliverOnTime)
            {
              stage += Ratio::from_amount(mp.spoilages[k]);
            }
          }
        }
        stage -= Ratio::from_amount(mp.stake_cost);
        merchant_rec.stage_utility = stage;
      }
      auto const &ma           = state_.merchants.at(pr.merchant).account;
      merchant_rec.phase_after = ma.phase;
      merchant_rec.trust_after = ma.trust;
      merchant_rec.alive_after = ma.alive;
      rec.agents.push_back(std::move(merchant_rec));
    }
    for (auto const &g : config_.guarantors)
    {
      AgentId gid{id_from_name(g.name), Role::Guarantor};
      AgentEpochRecord grec;
      grec.agent         = gid;
      grec.name          = g.name;
      grec.participated  = true;
      grec.wealth_delta  = wealth_now(gid) - wealth_before[gid];
      grec.stage_utility = Ratio::from_amount(grec.wealth_delta);
      rec.agents.push_back(std::move(grec));
    }

    rec.system_value = total_system_value(state_);
    return rec;
  }

  bool fund_over_limit(const PairRuntime &pr, const OverLimit &over,
                       EpochIndex e, std::vector<AuctionFunding> &fundings,
                       std::vector<StakeSlash> &slashes, EpochRecord &rec,
                       std::set<AgentId> &attempted)
  {
    if (!config_.auction || !attempted.insert(pr.buyer).second)
    {
      return false;
    }
    const AuctionScript &script = *config_.auction;

    std::optional<Auction> auction;
    try
    {
      auction.emplace(
          open_auction(pr.buyer, over.deficit, script.cap, e, registry_));
    }
    catch (const AuctionError &)
    {
      return false;
    }

    struct Placed
    {
      AgentId id{};
      Rate    rate{};
      bool    reveal  = true;
      bool    corrupt = false;
      Amount  locked{};
    };
    std::vector<Placed> placed;
    for (auto const &bid : script.bids)
    {
      AgentId gid{id_from_name(bid.guarantor), Role::Guarantor};
      GuarantorAccount &g = state_.guarantors.at(gid);
      Digest32 digest = Auction::bid_digest(
          bid.rate, bid_nonce(bid.guarantor, e, false), gid);
      try
      {
        auction->commit_bid(gid, digest, g.stake - g.locked);
      }
      catch (const AuctionError &)
      {
        continue;  // cannot lock the deficit or double-committed: no bid
      }
      Amount lock = auction->required_lock();
      g.locked += lock;
      placed.push_back(
          Placed{gid, bid.rate, bid.reveal, bid.corrupt_nonce, lock});
    }

    auction->begin_reveal();
    for (auto const &p : placed)
    {
      if (!p.reveal)
      {
        continue;
      }
      (void)auction->reveal_bid(p.id, p.rate,
                                bid_nonce(names_.at(p.id), e, p.corrupt));
    }

    AuctionOutcome outcome = auction->settle();
    for (auto const &gr : outcome.stakes)
    {
      state_.guarantors.at(gr.guarantor).locked -= gr.locked;
      if (gr.disposition == StakeDisposition::Slashed)
      {
        slashes.push_back(StakeSlash{gr.guarantor, gr.locked});
      }
    }

    AuctionRecord ar;
    ar.buyer   = pr.buyer;
    ar.deficit = over.deficit;
    ar.cap     = script.cap;
    ar.cleared = outcome.cleared;
    ar.stakes  = outcome.stakes;
    if (outcome.cleared)
    {
      ar.winner        = outcome.winner;
      ar.clearing_rate = outcome.clearing_rate;
      ar.fee           = auction_fee(over.deficit, outcome.clearing_rate);
      fundings.push_back(AuctionFunding{outcome.winner, pr.buyer, pr.merchant,
                                        over.deficit, ar.fee});
    }
    rec.auctions.push_back(std::move(ar));
    return outcome.cleared;
  }

  void accumulate_totals(EpochTrace &trace) const
  {
    Ratio one = Ratio::from_int(1);
    for (std::size_t pos = 0; pos < order_.size(); ++pos)
    {
      AgentTotals totals;
      totals.agent = order_[pos];
      totals.name  = names_.at(order_[pos]);

      Ratio sum;
      Ratio max_abs;
      Ratio dpow = one;
      for (auto const &epoch : trace.epochs)
      {
        const Ratio &u = epoch.agents[pos].stage_utility;
        sum += dpow * u;
        dpow *= config_.discount;
        Ratio mag = u < Ratio{} ? -u : u;
        if (max_abs < mag)
        {
          max_abs = mag;
        }
      }
      totals.discounted_total = sum;
      if (config_.discount > Ratio{})
      {
        // dpow is now discount^horizon.
        totals.tail_bound = dpow * max_abs / (one - config_.discount);
      }
      trace.totals.push_back(std::move(totals));
    }
  }

  const ScenarioConfig &config_;

  std::vector<PairRuntime>       pairs_;
  std::vector<AgentId>           order_;  // trace order: pair agents, guarantors
  std::map<AgentId, std::string> names_;

  SettlementState           state_;
  RootLedger                ledger_;
  AuctionRegistry           registry_;
  std::vector<PublicSignal> history_;
};

/// Stage utility of `pos` in the final simulated epoch — the analytic tail
/// assumes the run has converged to this per-epoch value (zero for agents
/// that are dead or withdrawn by then).
const Ratio &final_stage(const EpochTrace &trace, std::size_t pos)
{
  return trace.epochs.back().agents[pos].stage_utility;
}

}  // namespace

EpochTrace run_scenario(const ScenarioConfig &config)
{
  return Engine{config}.run();
}

std::vector<DeviationGain> one_shot_deviation_scan(const ScenarioConfig &config,
                                                   const std::string &agent_name,
                                                   std::uint64_t      epoch)
{
  const PairSpec *target = nullptr;
  Role            role   = Role::Buyer;
  for (auto const &pair : config.pairs)
  {
    if (pair.buyer_name == agent_name)
    {
      target = &pair;
      role   = Role::Buyer;
    }
    else if (pair.merchant_name == agent_name)
    {
      target = &pair;
      role   = Role::Merchant;
    }
  }
  if (target == nullptr)
  {
    throw std::invalid_argument("deviation scan: unknown agent '" +
                                agent_name + "'");
  }
  if (epoch > 100000)
  {
    throw std::invalid_argument(
        "deviation scan: epoch is out of the simulable range");
  }

  // Everyone else stays on the equilibrium path; the horizon is extended far
  // enough past the deviation for the punishment/recovery spell to wash out.
  ScenarioConfig base = config;
  int cushion = config.settlement.phase.punishment_epochs +
                config.settlement.phase.recovery_levels + 4;
  base.horizon = std::max(config.horizon,
                          static_cast<int>(epoch) + cushion);
  for (auto &pair : base.pairs)
  {
    pair.buyer_strategy    = AlwaysConform{};
    pair.merchant_strategy = AlwaysConform{};
  }

  EpochTrace baseline = run_scenario(base);

  std::size_t pos = 0;
  {
    bool found = false;
    for (std::size_t i = 0; i < baseline.totals.size(); ++i)
    {
      if (baseline.totals[i].name == agent_name)
      {
        pos   = i;
        found = true;
        break;
      }
    }
    if (!found)
    {
      throw std::logic_error("deviation scan: agent missing from trace");
    }
  }

  const Ratio &delta = config.discount;
  Ratio        one   = Ratio::from_int(1);

  auto engine_gain = [&](Action action) -> Ratio {
    ScenarioConfig dev = base;
    for (auto &pair : dev.pairs)
    {
      if (role == Role::Buyer && pair.buyer_name == agent_name)
      {
        pair.buyer_strategy = DeviateOnceAt{epoch, action};
      }
      if (role == Role::Merchant && pair.merchant_name == agent_name)
      {
        pair.merchant_strategy = DeviateOnceAt{epoch, action};
      }
    }
    EpochTrace deviated = run_scenario(dev);

    Ratio gain;
    Ratio dpow = one;
    for (std::size_t e = static_cast<std::size_t>(epoch);
         e < deviated.epochs.size(); ++e)
    {
      gain += dpow * (deviated.epochs[e].agents[pos].stage_utility -
                      baseline.epochs[e].agents[pos].stage_utility);
      dpow *= delta;
    }
    if (delta > Ratio{})
    {
      // Both runs hold their final per-epoch value forever past the horizon
      // (converged or absorbed); dpow is now δ^(horizon − epoch).
      gain += dpow *
              (final_stage(deviated, pos) - final_stage(baseline, pos)) /
              (one - delta);
    }
    return gain;
  };

  std::vector<DeviationGain> gains;
  if (role == Role::Buyer)
  {
    gains.push_back(DeviationGain{BuyerAction::PayLate,
                                  engine_gain(BuyerAction::PayLate), false});
    // Worst-case one-shot default: run up the full exposure, forfeit the
    // stake, lose the discounted continuation value of staying.
    const incentives::BuyerParams &bp = target->buyer;
    Ratio u_bar =
        bp.baseline ? *bp.baseline : incentives::buyer_utilities(bp).conform;
    Ratio gain = Ratio::from_amount(bp.max_exposure - bp.stake) -
                 delta * u_bar / (one - delta);
    gains.push_back(DeviationGain{BuyerAction::Default, gain, true});
  }
  else
  {
    gains.push_back(DeviationGain{MerchantAction::DeliverLate,
                                  engine_gain(MerchantAction::DeliverLate),
                                  false});
    gains.push_back(DeviationGain{MerchantAction::FailToDeliver,
                                  engine_gain(MerchantAction::FailToDeliver),
                                  false});
  }
  return gains;
}

SweepResult sweep_delta(const ScenarioConfig &config, const Ratio &step)
{
  Ratio one = Ratio::from_int(1);
  if (!(step > Ratio{}) || !(step < one))
  {
    throw std::invalid_argument("sweep: step must satisfy 0 < step < 1");
  }
  if (config.pairs.empty())
  {
    throw std::invalid_argument("sweep: scenario has no buyer to sweep");
  }
  const incentives::BuyerParams &bp = config.pairs.front().buyer;
  incentives::validate(bp);
  Ratio u_bar =
      bp.baseline ? *bp.baseline : incentives::buyer_utilities(bp).conform;
  Ratio stage_gain = Ratio::from_amount(bp.max_exposure - bp.stake);

  std::vector<Ratio> grid;
  for (Ratio d; d < one; d += step)
  {
    grid.push_back(d);
  }

  SweepResult result;
  result.rows.resize(grid.size());
  result.analytic = incentives::delta_threshold(bp.max_exposure, bp.stake,
                                                u_bar);

  // Fan the grid out across hardware threads; each worker owns a disjoint
  // index range, so the merged rows are in grid order no matter how the
  // workers are scheduled.
  auto worker = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
    {
      const Ratio &d    = grid[i];
      Ratio        gain = stage_gain - d * u_bar / (one - d);
      result.rows[i] =
          SweepRow{d, gain, gain <= Ratio{}};
    }
  };

  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  std::size_t chunks = std::min<std::size_t>(grid.size(), hw);
  std::vector<std::future<void>> futures;
  if (chunks > 1)
  {
    std::size_t per = (grid.size() + chunks - 1) / chunks;
    for (std::size_t c = 0; c < chunks; ++c)
    {
      std::size_t begin = c * per;
      std::size_t end   = std::min(grid.size(), begin + per);
      if (begin >= end)
      {
        break;
      }
      futures.push_back(std::async(std::launch::async, worker, begin, end));
    }
    for (auto &f : futures)
    {
      f.get();
    }
  }
  else
  {
    worker(0, grid.size());
  }

  for (auto const &row : result.rows)
  {
    if (row.conform_best)
    {
      result.empirical_threshold = row.delta;
      break;
    }
  }
  return result;
}

}  // namespace epochpay::sim
