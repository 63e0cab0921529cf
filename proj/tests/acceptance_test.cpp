// Copyright 2026 The Epochpay Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance gate for the protocol model. Each criterion below is one
// headline guarantee of the system, checked end to end and printed as a
// single [PASS]/[FAIL] line with its wall-clock time. Every numeric
// expectation is exact (rational or integer micro-units) — no tolerances —
// and the expected values are cross-checked against the independent oracle
// in tests/oracle.hpp wherever they are derived rather than definitional.
//
// Usage:
//   epochpay_acceptance        run all criteria
//   epochpay_acceptance <n>    run criterion n in isolation (1..9)
//
// Exit status 0 iff every selected criterion passed within its time limit.

#include "oracle.hpp"
#include "support.hpp"

#include "epochpay/aggregator.hpp"
#include "epochpay/auction.hpp"
#include "epochpay/costmodel.hpp"
#include "epochpay/incentives.hpp"
#include "epochpay/leaf.hpp"
#include "epochpay/ledger.hpp"
#include "epochpay/merkle.hpp"
#include "epochpay/serialize.hpp"
#include "epochpay/sim.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace epochpay;
using support::rat;
using support::units;

// Records one failed expectation with its source line so a red criterion is
// diagnosable from the log alone.
#define EXPECT(...)                                                           \
  do                                                                          \
  {                                                                           \
    if (!(__VA_ARGS__))                                                       \
    {                                                                         \
      ok = false;                                                             \
      why.push_back(std::string{"line "} + std::to_string(__LINE__) + ": " + \
                    #__VA_ARGS__);                                            \
    }                                                                         \
  } while (0)

const incentives::ConditionResult &condition(
    const incentives::IncentiveReport &report, const std::string &name)
{
  for (const auto &c : report.conditions)
  {
    if (c.name == name)
    {
      return c;
    }
  }
  throw std::logic_error("no condition named " + name);
}

// ---------------------------------------------------------------------------
// 1. Merchant stage ordering, exact, plus the zero-margin knife edge.

bool criterion_1(std::vector<std::string> &why)
{
  bool ok = true;

  incentives::MerchantParams p = support::canonical_merchant();
  incentives::StageUtilities u = incentives::merchant_utilities(p);
  EXPECT(u.conform == Ratio{101, 1});
  EXPECT(u.late == Ratio{97, 1});
  EXPECT(u.deviate_default == Ratio{78, 1});
  EXPECT(u.conform > u.late);
  EXPECT(u.late > u.deviate_default);

  // The oracle recomputes the three rows from first principles.
  oracle::Rows rows = oracle::merchant_rows(support::to_oracle(p));
  EXPECT(rat(u.conform) == rows.conform);
  EXPECT(rat(u.late) == rows.late);
  EXPECT(rat(u.deviate_default) == rows.deviate_default);

  // The full condition report holds strictly on the canonical set.
  incentives::IncentiveReport report = incentives::check_merchant_conditions(p);
  EXPECT(report.all_hold());

  // Push the late penalty down onto the spoilage value: the dominance
  // condition sits exactly on its boundary and must be reported as a
  // zero-margin failure of a strict inequality, not as a pass.
  incentives::MerchantParams edge = p;
  edge.late_penalties             = edge.spoilages;
  incentives::IncentiveReport at_edge =
      incentives::check_merchant_conditions(edge);
  const incentives::ConditionResult &dom =
      condition(at_edge, "late_penalty_dominance");
  EXPECT(!dom.holds);
  EXPECT(dom.strict);
  EXPECT(dom.margin == Ratio{});
  EXPECT(dom.note.find("boundary") != std::string::npos);
  EXPECT(!at_edge.all_hold());

  return ok;
}

// ---------------------------------------------------------------------------
// 2. Reward-suspension loss: closed form == direct sum, and the closed form
//    is a lower bound for any loss sequence at or above the floor.

bool criterion_2(std::vector<std::string> &why)
{
  bool ok = true;

  incentives::SuspensionLoss loss =
      incentives::suspension_loss(Ratio{9, 10}, 3, units(10));
  EXPECT(loss.bound == Ratio{271, 10});
  EXPECT(loss.exact_sum == Ratio{271, 10});
  EXPECT(rat(loss.bound) ==
         oracle::suspension_bound(oracle::Rat{9, 10}, 3, oracle::Rat{10}));

  std::mt19937_64                        rng{0x5e55104c0ffeeULL};
  std::uniform_int_distribution<int>     delta_pct(0, 99);
  std::uniform_int_distribution<int>     epochs(0, 8);
  std::uniform_int_distribution<int64_t> floor_micro(0, 20'000'000);
  std::uniform_int_distribution<int64_t> extra_micro(0, 9'000'000);

  for (int trial = 0; trial < 1000 && ok; ++trial)
  {
    Ratio  delta{delta_pct(rng), 100};
    int    spell = epochs(rng);
    Amount floor = Amount::from_micro(floor_micro(rng));

    std::vector<oracle::Rat> losses;
    for (int t = 0; t < spell; ++t)
    {
      losses.push_back(support::rat_units(floor) +
                       oracle::Rat(extra_micro(rng), 1'000'000));
    }

    incentives::SuspensionLoss trial_loss =
        incentives::suspension_loss(delta, spell, floor);
    oracle::Rat realized = oracle::suspension_sum(rat(delta), losses);
    EXPECT(rat(trial_loss.bound) <= realized);
  }

  return ok;
}

// ---------------------------------------------------------------------------
// 3. Buyer default threshold: analytic 70/94, empirical flip at 0.75 on a
//    0.01 grid, and the exact one-shot gains on both sides of it.

Ratio default_gain_at(const Ratio &delta)
{
  sim::ScenarioConfig config = support::canonical_scenario(8, delta);
  auto gains = sim::one_shot_deviation_scan(config, "buyer", 0);
  for (const auto &g : gains)
  {
    if (g.action == Action{BuyerAction::Default})
    {
      if (!g.analytic)
      {
        throw std::logic_error("default gain should be the closed form");
      }
      return g.gain;
    }
  }
  throw std::logic_error("scan returned no default row");
}

bool criterion_3(std::vector<std::string> &why)
{
  bool ok = true;

  incentives::ThresholdResult analytic =
      incentives::delta_threshold(units(100), units(30), Ratio{24, 1});
  EXPECT(analytic.kind == incentives::ThresholdResult::Kind::Ok);
  EXPECT(analytic.value == Ratio{70, 94});

  oracle::Threshold check =
      oracle::delta_threshold(oracle::Rat{100}, oracle::Rat{30},
                              oracle::Rat{24});
  EXPECT(check.kind == oracle::ThresholdKind::Ok);
  EXPECT(rat(analytic.value) == check.value);

  sim::SweepResult sweep =
      sim::sweep_delta(support::canonical_scenario(6, Ratio{4, 5}),
                       Ratio{1, 100});
  EXPECT(sweep.rows.size() == 100);
  EXPECT(sweep.analytic.kind == incentives::ThresholdResult::Kind::Ok);
  EXPECT(sweep.analytic.value == Ratio{70, 94});
  EXPECT(sweep.rows[74].delta == Ratio{74, 100});
  EXPECT(!sweep.rows[74].conform_best);
  EXPECT(sweep.rows[75].delta == Ratio{75, 100});
  EXPECT(sweep.rows[75].conform_best);
  EXPECT(sweep.empirical_threshold.has_value());
  EXPECT(sweep.empirical_threshold == Ratio{3, 4});

  EXPECT(default_gain_at(Ratio{4, 5}) == Ratio{-26, 1});
  EXPECT(default_gain_at(Ratio{7, 10}) == Ratio{14, 1});

  return ok;
}

// ---------------------------------------------------------------------------
// 4. The analytic buyer equilibrium verdict agrees with the simulator's
//    one-shot deviation scan over a 5×5×5 grid of (v_max, stake, baseline).

bool criterion_4(std::vector<std::string> &why)
{
  bool ok = true;

  const std::array<std::int64_t, 5> exposures{40, 60, 80, 100, 120};
  const std::array<std::int64_t, 5> stakes{0, 15, 30, 45, 60};
  const std::array<std::int64_t, 5> baselines{6, 12, 18, 24, 30};

  int checked = 0;
  int analytic_true = 0;
  for (std::int64_t v : exposures)
  {
    for (std::int64_t s : stakes)
    {
      for (std::int64_t ub : baselines)
      {
        incentives::BuyerParams buyer = support::canonical_buyer();
        buyer.payments                = {units(v)};
        buyer.service_values          = {units(v + 20)};
        buyer.spoilages               = {units(3)};
        buyer.late_penalties          = {units(5)};
        buyer.max_exposure            = units(v);
        // Cover the batch with one late contraction of headroom, so the
        // measured deviation path prices the reward suspension and not a
        // credit-starved collapse of later epochs.
        buyer.credit_limit            = units(v + 4);
        buyer.stake                   = units(s);
        buyer.baseline                = Ratio{ub, 1};

        incentives::MerchantParams merchant = support::canonical_merchant();
        merchant.payments                   = {units(v)};

        sim::ScenarioConfig config;
        config.horizon  = 6;
        config.discount = Ratio{4, 5};
        sim::PairSpec pair;
        pair.buyer_name     = "buyer";
        pair.merchant_name  = "merchant";
        pair.buyer          = buyer;
        pair.merchant       = merchant;
        pair.merchant_stake = units(40);
        config.pairs.push_back(pair);

        bool analytic = incentives::verify_buyer_ppe(buyer);
        auto gains    = sim::one_shot_deviation_scan(config, "buyer", 0);
        bool measured = std::all_of(
            gains.begin(), gains.end(),
            [](const sim::DeviationGain &g) { return g.gain <= Ratio{}; });

        if (analytic != measured)
        {
          ok = false;
          std::ostringstream msg;
          msg << "disagreement at v_max=" << v << " stake=" << s
              << " baseline=" << ub << ": analytic=" << analytic
              << " scan=" << measured;
          why.push_back(msg.str());
        }
        ++checked;
        analytic_true += analytic ? 1 : 0;
      }
    }
  }
  EXPECT(checked == 125);
  // The grid must exercise both verdicts, or agreement is vacuous.
  EXPECT(analytic_true > 0);
  EXPECT(analytic_true < 125);

  return ok;
}

// ---------------------------------------------------------------------------
// 5. Merkle soundness, ledger reject reasons, and omission detection.

LeafRecord tx_leaf_for(std::uint64_t seed)
{
  Transaction tx;
  tx.id       = id_from_name("acceptance-tx-" + std::to_string(seed));
  tx.buyer    = AgentId{id_from_name("alice"), Role::Buyer};
  tx.merchant = AgentId{id_from_name("bob"), Role::Merchant};
  tx.payment  = Amount::from_micro(1'000'000 + static_cast<int64_t>(seed));
  tx.service_value = Amount::from_micro(2'000'000);
  tx.epoch         = EpochIndex{0};
  return encode_tx_leaf(tx);
}

bool criterion_5(std::vector<std::string> &why)
{
  bool ok = true;

  // Every honest proof verifies; every single-leaf tamper fails; the root
  // matches the oracle's recursive definition.
  for (std::size_t n = 1; n <= 16 && ok; ++n)
  {
    std::vector<LeafRecord> leaves;
    std::vector<oracle::Bytes> oracle_leaves;
    for (std::size_t i = 0; i < n; ++i)
    {
      leaves.push_back(tx_leaf_for(1000 * n + i));
      oracle_leaves.push_back(leaves.back().bytes);
    }
    MerkleTree tree = MerkleTree::build(leaves);

    oracle::Hash expected_root = oracle::merkle_root(oracle_leaves);
    EXPECT(std::equal(expected_root.begin(), expected_root.end(),
                      tree.root().begin()));

    for (std::size_t i = 0; i < n; ++i)
    {
      InclusionProof proof = tree.prove(i);
      EXPECT(verify_inclusion(tree.root(), leaves[i], proof));

      LeafRecord tampered = leaves[i];
      tampered.bytes[0] ^= 0x01;
      EXPECT(!verify_inclusion(tree.root(), tampered, proof));
      LeafRecord clipped = leaves[i];
      clipped.bytes.back() ^= 0x80;
      EXPECT(!verify_inclusion(tree.root(), clipped, proof));
    }
  }

  // Ledger reject reasons: duplicate, stale, window, and gap submissions.
  {
    RootLedger ledger;  // window: [start(e), end(e) + one epoch]
    Digest32   r0 = MerkleTree::build(std::vector{tx_leaf_for(1)}).root();
    Digest32   r1 = MerkleTree::build(std::vector{tx_leaf_for(2)}).root();

    EXPECT(ledger.submit(EpochIndex{0}, RootKind::TxRoot, r0, Hours{1})
               .accepted);
    EXPECT(ledger.submit(EpochIndex{1}, RootKind::TxRoot, r1, Hours{5})
               .accepted);

    SubmitResult dup =
        ledger.submit(EpochIndex{1}, RootKind::TxRoot, r1, Hours{5});
    EXPECT(!dup.accepted);
    EXPECT(dup.reason == RejectReason::DuplicateEpoch);

    SubmitResult stale =
        ledger.submit(EpochIndex{0}, RootKind::TxRoot, r0, Hours{5});
    EXPECT(!stale.accepted);
    EXPECT(stale.reason == RejectReason::StaleEpoch);

    SubmitResult late =
        ledger.submit(EpochIndex{2}, RootKind::TxRoot, r0, Hours{100});
    EXPECT(!late.accepted);
    EXPECT(late.reason == RejectReason::WindowClosed);

    SubmitResult gap =
        ledger.submit(EpochIndex{3}, RootKind::TxRoot, r0, Hours{13});
    EXPECT(!gap.accepted);
    EXPECT(gap.reason == RejectReason::NotNextEpoch);
  }

  // Adversarial omission: for each position, dropping that leaf leaves all
  // other staged leaves provable and exactly the omitted one unprovable.
  for (std::size_t omit = 0; omit < 5; ++omit)
  {
    RootLedger ledger;
    Aggregator aggregator{ledger};
    std::vector<LeafRecord> staged;
    for (std::size_t i = 0; i < 5; ++i)
    {
      staged.push_back(tx_leaf_for(9000 + i));
    }
    aggregator.stage_batch(EpochIndex{0}, RootKind::TxRoot, staged);
    EffectReport report = aggregator.step(OmitLeaf{omit}, Hours{1});

    EXPECT(report.proof_checks.size() == 5);
    for (const auto &check : report.proof_checks)
    {
      EXPECT(check.verified == (check.leaf_index != omit));
    }
  }

  return ok;
}

// ---------------------------------------------------------------------------
// 6. Constant on-chain commitment cost; linear off-chain footprint.

bool criterion_6(std::vector<std::string> &why)
{
  bool ok = true;

  const std::vector<std::size_t> batches{1, 100, 200, 300, 400, 500};
  CostModelReport report = cost_model(batches);

  EXPECT(report.onchain_messages_per_epoch == 2);
  EXPECT(report.onchain_bytes_per_message == kCommitmentMessageBytes);
  EXPECT(report.onchain_bytes_per_epoch == 2 * kCommitmentMessageBytes);

  EXPECT(report.offchain.size() == batches.size());
  for (std::size_t i = 0; i < batches.size(); ++i)
  {
    EXPECT(report.offchain[i].batch == batches[i]);
    EXPECT(report.offchain[i].leaf_bytes == kTxLeafBytes);
    EXPECT(report.offchain[i].total_bytes == batches[i] * kTxLeafBytes);
  }

  // Measure, don't just report: build a real tree at every batch size and
  // encode its commitment message. The message must be the same 41 bytes
  // regardless of how many transactions stand behind the root.
  for (std::size_t batch : batches)
  {
    std::vector<LeafRecord> leaves;
    std::size_t             offchain = 0;
    for (std::size_t i = 0; i < batch; ++i)
    {
      leaves.push_back(tx_leaf_for(batch * 17 + i));
      offchain += leaves.back().bytes.size();
    }
    MerkleTree tree    = MerkleTree::build(leaves);
    auto       message = encode_commitment_message(EpochIndex{7}, LeafKind::Tx,
                                                   tree.root());
    EXPECT(message.size() == kCommitmentMessageBytes);
    EXPECT(offchain == batch * kTxLeafBytes);
  }

  return ok;
}

// ---------------------------------------------------------------------------
// 7. Auction truthfulness: exhaustive over every profile of up to five
//    guarantors on the 100–800 bps grid.

struct AuctionRun
{
  bool        cleared = false;
  std::size_t winner  = SIZE_MAX;
  Rate        clearing{};
  AuctionOutcome outcome;
};

class AuctionBench
{
public:
  AuctionBench()
  {
    buyer_ = AgentId{id_from_name("overdrawn-buyer"), Role::Buyer};
    for (std::size_t g = 0; g < kMaxGuarantors; ++g)
    {
      ids_[g] = AgentId{id_from_name("guarantor-" + std::to_string(g)),
                        Role::Guarantor};
      nonces_[g].fill(static_cast<std::uint8_t>(0x11 * (g + 1)));
      for (std::size_t r = 0; r < kRates; ++r)
      {
        digests_[g][r] = Auction::bid_digest(rate(r), nonces_[g], ids_[g]);
      }
    }
  }

  static constexpr std::size_t kMaxGuarantors = 5;
  static constexpr std::size_t kGridRates     = 8;  // 100..800 bps
  static constexpr std::size_t kRates         = 9;  // grid + one over-cap
  static constexpr std::size_t kOverCap       = 8;  // index of the 900 bps bid

  static Rate rate(std::size_t index)
  {
    return Rate{10'000 * (static_cast<std::uint64_t>(index) + 1)};
  }

  Amount principal() const { return units(20); }
  Rate   cap() const { return rate(kGridRates - 1); }  // 800 bps reserve

  AuctionRun run(std::size_t n, const std::array<std::size_t, 5> &bids) const
  {
    AuctionRegistry registry;
    Auction auction =
        open_auction(buyer_, principal(), cap(), EpochIndex{0}, registry);
    for (std::size_t g = 0; g < n; ++g)
    {
      auction.commit_bid(ids_[g], digests_[g][bids[g]], principal());
    }
    auction.begin_reveal();
    for (std::size_t g = 0; g < n; ++g)
    {
      auction.reveal_bid(ids_[g], rate(bids[g]), nonces_[g]);
    }
    AuctionRun result;
    result.outcome  = auction.settle();
    result.cleared  = result.outcome.cleared;
    result.clearing = result.outcome.clearing_rate;
    if (result.cleared)
    {
      for (std::size_t g = 0; g < n; ++g)
      {
        if (ids_[g] == result.outcome.winner)
        {
          result.winner = g;
          break;
        }
      }
    }
    return result;
  }

  // Winner's net: fee received at the clearing rate minus the true cost of
  // tying up the stake, both as flat fees on the principal. Losers net zero.
  std::int64_t payoff_micro(const AuctionRun &run, std::size_t g,
                            std::size_t true_cost_index) const
  {
    if (!run.cleared || run.winner != g)
    {
      return 0;
    }
    return auction_fee(principal(), run.clearing).micro() -
           auction_fee(principal(), rate(true_cost_index)).micro();
  }

  const AgentId &guarantor(std::size_t g) const { return ids_[g]; }
  const AgentId &buyer() const { return buyer_; }

private:
  AgentId buyer_{};
  std::array<AgentId, kMaxGuarantors>                              ids_{};
  std::array<Nonce32, kMaxGuarantors>                              nonces_{};
  std::array<std::array<Digest32, kRates>, kMaxGuarantors>         digests_{};
};

bool criterion_7(std::vector<std::string> &why)
{
  bool ok = true;
  AuctionBench bench;

  std::uint64_t profiles_checked   = 0;
  std::uint64_t deviations_checked = 0;

  for (std::size_t n = 1; n <= AuctionBench::kMaxGuarantors && ok; ++n)
  {
    std::array<std::size_t, 5> costs{};  // true costs, indices into the grid
    const std::uint64_t profile_count = [&] {
      std::uint64_t c = 1;
      for (std::size_t i = 0; i < n; ++i)
      {
        c *= AuctionBench::kGridRates;
      }
      return c;
    }();

    for (std::uint64_t code = 0; code < profile_count && ok; ++code)
    {
      std::uint64_t rest = code;
      for (std::size_t g = 0; g < n; ++g)
      {
        costs[g] = rest % AuctionBench::kGridRates;
        rest /= AuctionBench::kGridRates;
      }

      AuctionRun truthful = bench.run(n, costs);
      EXPECT(truthful.cleared);  // every truthful grid bid is under the cap

      std::array<std::int64_t, 5> truthful_payoff{};
      for (std::size_t g = 0; g < n; ++g)
      {
        truthful_payoff[g] = bench.payoff_micro(truthful, g, costs[g]);
        EXPECT(truthful_payoff[g] >= 0);
      }

      for (std::size_t g = 0; g < n && ok; ++g)
      {
        for (std::size_t dev = 0; dev < AuctionBench::kRates; ++dev)
        {
          if (dev == costs[g])
          {
            continue;
          }
          std::array<std::size_t, 5> bids = costs;
          bids[g]                         = dev;
          AuctionRun run                  = bench.run(n, bids);
          std::int64_t gained = bench.payoff_micro(run, g, costs[g]);
          if (gained > truthful_payoff[g])
          {
            ok = false;
            std::ostringstream msg;
            msg << "profitable deviation: n=" << n << " profile=" << code
                << " guarantor=" << g << " bid-index=" << dev
                << " gained=" << gained << " truthful=" << truthful_payoff[g];
            why.push_back(msg.str());
            break;
          }
          if (dev == AuctionBench::kOverCap)
          {
            // An over-cap reveal is rejected (never wins) but is an honest
            // opening of the commitment, so the stake comes back.
            EXPECT(!(run.cleared && run.winner == g));
            bool found = false;
            for (const auto &entry : run.outcome.stakes)
            {
              if (entry.guarantor == bench.guarantor(g))
              {
                found = true;
                EXPECT(entry.disposition == StakeDisposition::Released);
                EXPECT(entry.reveal == RevealStatus::OverCap);
              }
            }
            EXPECT(found);
          }
          ++deviations_checked;
        }
      }
      ++profiles_checked;
    }
  }
  EXPECT(profiles_checked == 8 + 64 + 512 + 4096 + 32768);
  EXPECT(deviations_checked == 8ULL * 8 + 64 * 2 * 8 + 512 * 3 * 8 +
                                   4096 * 4 * 8 + 32768 * 5 * 8);

  // Zero admissible reveals: the auction fails with the typed reason and
  // every honest over-cap bidder gets the stake back.
  for (std::size_t n = 1; n <= AuctionBench::kMaxGuarantors; ++n)
  {
    std::array<std::size_t, 5> bids{};
    bids.fill(AuctionBench::kOverCap);
    AuctionRun run = bench.run(n, bids);
    EXPECT(!run.cleared);
    EXPECT(run.outcome.failure == AuctionFailure::NoAdmissibleBid);
    for (const auto &entry : run.outcome.stakes)
    {
      EXPECT(entry.disposition == StakeDisposition::Released);
    }
  }

  // One auction per buyer per epoch, enforced by the registry.
  {
    AuctionRegistry registry;
    Auction first = open_auction(bench.buyer(), bench.principal(), bench.cap(),
                                 EpochIndex{3}, registry);
    (void)first;
    bool threw = false;
    try
    {
      Auction second = open_auction(bench.buyer(), bench.principal(),
                                    bench.cap(), EpochIndex{3}, registry);
      (void)second;
    }
    catch (const AuctionError &e)
    {
      threw = (e.code() == AuctionErrorCode::SecondAuctionSameEpoch);
    }
    EXPECT(threw);
  }

  return ok;
}

// ---------------------------------------------------------------------------
// 8. Buyer participation: the avoided opportunity cost of freed collateral,
//    exact pre-rounding and after round-half-even, and the IR knife edge.

bool criterion_8(std::vector<std::string> &why)
{
  bool ok = true;

  // (Σv − S) = 70 units at a 5% annual opportunity rate over a 4-hour
  // epoch: 70 · 50000/10^6 · 4/8760 = 14/8760 units, exactly.
  oracle::Rat exact = oracle::Rat(oracle::Int{70} * 50'000 * 4,
                                  oracle::Int{1'000'000} * 8760);
  EXPECT(exact == oracle::Rat(14, 8760));

  oracle::Int micro =
      oracle::apply_rate_micro(oracle::Int{70} * 1'000'000, 50'000, 4);
  EXPECT(micro == 1598);
  EXPECT(oracle::round_half_even(exact * 1'000'000) == 1598);

  Amount yield = apply_rate(units(70), Rate{50'000}, Hours{4});
  EXPECT(yield.micro() == 1598);

  // The participation condition compares the exact rational yield against
  // the financing cost, so IR flips between 1598 and 1599 micro-units.
  incentives::BuyerParams at_edge = support::canonical_buyer();
  at_edge.financing_cost          = Amount::from_micro(1598);
  const incentives::ConditionResult &holds = condition(
      incentives::check_buyer_conditions(at_edge), "participation_ir");
  EXPECT(holds.holds);
  EXPECT(holds.margin == Ratio{14, 8760} - Ratio{1598, 1'000'000});
  EXPECT(holds.margin > Ratio{});

  at_edge.financing_cost = Amount::from_micro(1599);
  const incentives::ConditionResult &fails = condition(
      incentives::check_buyer_conditions(at_edge), "participation_ir");
  EXPECT(!fails.holds);
  EXPECT(fails.margin < Ratio{});

  return ok;
}

// ---------------------------------------------------------------------------
// 9. Exact per-epoch conservation across the bundled scenarios.

std::string slurp(const std::string &path, std::vector<std::string> &why,
                  bool &ok)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    ok = false;
    why.push_back("cannot open " + path);
    return {};
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool criterion_9(std::vector<std::string> &why)
{
  bool ok = true;

  const std::string dir = EPOCHPAY_SCENARIO_DIR;
  struct Expectation
  {
    std::string file;
    bool        expect_auction = false;
    bool        expect_death   = false;
  };
  const std::vector<Expectation> bundle{
      {"conform.json", false, false},
      {"late.json", false, false},
      {"default.json", false, true},
      {"auction_assisted.json", true, false},
  };

  for (const auto &entry : bundle)
  {
    std::string text = slurp(dir + "/" + entry.file, why, ok);
    if (text.empty())
    {
      continue;
    }
    sim::ScenarioConfig config = io::parse_scenario(text);
    sim::EpochTrace     trace  = sim::run_scenario(config);

    if (!trace.conserved)
    {
      ok = false;
      why.push_back(entry.file + ": engine reports a conservation break");
    }
    for (const auto &epoch : trace.epochs)
    {
      if (epoch.system_value != trace.initial_system_value)
      {
        ok = false;
        why.push_back(entry.file + ": epoch " +
                      std::to_string(epoch.epoch.index) +
                      " system value drifted");
        break;
      }
    }

    bool saw_auction = false;
    bool saw_death   = false;
    for (const auto &epoch : trace.epochs)
    {
      saw_auction = saw_auction || !epoch.auctions.empty();
      for (const auto &agent : epoch.agents)
      {
        saw_death = saw_death || !agent.alive_after;
      }
    }
    if (entry.expect_auction && !saw_auction)
    {
      ok = false;
      why.push_back(entry.file + ": expected an over-limit auction");
    }
    if (entry.expect_death && !saw_death)
    {
      ok = false;
      why.push_back(entry.file + ": expected a default to kill the deviator");
    }
  }

  return ok;
}

// ---------------------------------------------------------------------------

struct Criterion
{
  int         id;
  const char *label;
  double      limit_seconds;
  bool (*run)(std::vector<std::string> &);
};

const std::array<Criterion, 9> kCriteria{{
    {1,
     "merchant stage ordering 101 > 97 > 78 exact; P_LM = Psi reports a "
     "zero-margin boundary",
     1.0, criterion_1},
    {2,
     "suspension loss closed form equals the direct sum (271/10) and bounds "
     "1000 random loss sequences",
     1.0, criterion_2},
    {3,
     "default threshold 70/94; sweep flips at 0.75 on the 0.01 grid; gains "
     "-26 at 4/5 and +14 at 7/10",
     5.0, criterion_3},
    {4,
     "analytic buyer equilibrium verdict matches the deviation scanner on a "
     "5x5x5 (v_max, stake, baseline) grid",
     30.0, criterion_4},
    {5,
     "Merkle proofs sound for 1..16 leaves; ledger reject reasons typed; "
     "omission unprovable, rest provable",
     10.0, criterion_5},
    {6,
     "commitment messages constant at 41 bytes x 2 across batches "
     "{1,100,200,300,400,500}; off-chain linear",
     5.0, criterion_6},
    {7,
     "truthful bidding weakly dominant over all profiles of <= 5 guarantors "
     "on the 100-800 bps grid",
     60.0, criterion_7},
    {8,
     "freed-collateral yield 14/8760 units = 1598 micro (half-even); buyer "
     "IR flips exactly there",
     1.0, criterion_8},
    {9,
     "per-epoch micro-unit conservation exact in the bundled conform, late, "
     "default, and auction scenarios",
     10.0, criterion_9},
}};

bool run_criterion(const Criterion &criterion)
{
  std::vector<std::string> why;
  auto start = std::chrono::steady_clock::now();
  bool ok    = false;
  try
  {
    ok = criterion.run(why);
  }
  catch (const std::exception &e)
  {
    ok = false;
    why.push_back(std::string{"unhandled exception: "} + e.what());
  }
  std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;

  if (elapsed.count() >= criterion.limit_seconds)
  {
    ok = false;
    std::ostringstream msg;
    msg << "time limit exceeded: " << elapsed.count() << " s of "
        << criterion.limit_seconds << " s";
    why.push_back(msg.str());
  }

  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion.id
            << ": " << criterion.label << " (" << std::fixed
            << std::setprecision(3) << elapsed.count() << " s, limit "
            << std::defaultfloat << criterion.limit_seconds << " s)\n";
  for (const auto &line : why)
  {
    std::cout << "        " << line << "\n";
  }
  std::cout.flush();
  return ok;
}

}  // namespace

int main(int argc, char **argv)
{
  if (argc > 2)
  {
    std::cerr << "usage: " << argv[0] << " [criterion 1..9]\n";
    return 2;
  }

  int selected = 0;
  if (argc == 2)
  {
    try
    {
      selected = std::stoi(argv[1]);
    }
    catch (const std::exception &)
    {
      selected = -1;
    }
    if (selected < 1 || selected > 9)
    {
      std::cerr << "usage: " << argv[0] << " [criterion 1..9]\n";
      return 2;
    }
  }

  bool all_ok = true;
  for (const auto &criterion : kCriteria)
  {
    if (selected != 0 && criterion.id != selected)
    {
      continue;
    }
    all_ok = run_criterion(criterion) && all_ok;
  }
  return all_ok ? 0 : 1;
}
