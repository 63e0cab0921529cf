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

#include <epochpay/aggregator.hpp>
#include <epochpay/ids.hpp>
#include <epochpay/leaf.hpp>
#include <epochpay/ledger.hpp>
#include <epochpay/merkle.hpp>
#include <epochpay/tx.hpp>

#include <doctest.h>

#include <cstdint>
#include <string>
#include <vector>

using namespace epochpay;

namespace {

Digest32 fake_root(std::uint8_t tag)
{
  Digest32 d{};
  d[0] = tag;
  return d;
}

Transaction make_tx(const std::string &buyer, const std::string &merchant,
                    std::int64_t payment_units, std::uint64_t epoch)
{
  Transaction tx;
  tx.id            = id_from_name("tx-" + buyer + "-" + merchant);
  tx.buyer         = AgentId{id_from_name(buyer), Role::Buyer};
  tx.merchant      = AgentId{id_from_name(merchant), Role::Merchant};
  tx.payment       = Amount::from_units(payment_units);
  tx.service_value = Amount::from_units(payment_units + 5);
  tx.epoch         = EpochIndex{epoch};
  return tx;
}

std::vector<LeafRecord> staged_batch(std::size_t n, std::uint64_t epoch)
{
  std::vector<LeafRecord> out;
  for (std::size_t i = 0; i < n; ++i)
  {
    out.push_back(encode_tx_leaf(
        make_tx("buyer-" + std::to_string(i), "merchant", 10, epoch)));
  }
  return out;
}

}  // namespace

TEST_CASE("leaf encodings are fixed-width big-endian byte layouts")
{
  Transaction tx = make_tx("alice", "bob", 100, 3);
  LeafRecord  leaf = encode_tx_leaf(tx);

  REQUIRE(leaf.bytes.size() == kTxLeafBytes);
  CHECK(kTxLeafBytes == 122);
  CHECK(leaf.kind == LeafKind::Tx);
  CHECK(leaf.bytes[0] == 0x01);  // version
  CHECK(leaf.bytes[1] == 0x01);  // tx kind

  // Id fields occupy [2, 98) in tx / buyer / merchant order.
  for (int i = 0; i < 32; ++i)
  {
    CHECK(leaf.bytes[2 + i] == tx.id[static_cast<std::size_t>(i)]);
    CHECK(leaf.bytes[34 + i] == tx.buyer.id[static_cast<std::size_t>(i)]);
    CHECK(leaf.bytes[66 + i] == tx.merchant.id[static_cast<std::size_t>(i)]);
  }

  // payment = 100 units = 100,000,000 micro = 0x05F5E100, big-endian.
  const std::uint8_t payment_be[8] = {0, 0, 0, 0, 0x05, 0xF5, 0xE1, 0x00};
  for (int i = 0; i < 8; ++i)
  {
    CHECK(leaf.bytes[98 + i] == payment_be[i]);
  }
  // epoch = 3, big-endian in the final eight bytes.
  for (int i = 0; i < 7; ++i)
  {
    CHECK(leaf.bytes[114 + i] == 0);
  }
  CHECK(leaf.bytes[121] == 3);
}

TEST_CASE("credit leaves encode negatives in two's complement")
{
  AgentId agent{id_from_name("carol"), Role::Buyer};
  LeafRecord leaf =
      encode_credit_leaf(agent, Amount::from_micro(-1), EpochIndex{9});

  REQUIRE(leaf.bytes.size() == kCreditLeafBytes);
  CHECK(kCreditLeafBytes == 50);
  CHECK(leaf.bytes[0] == 0x01);
  CHECK(leaf.bytes[1] == 0x02);  // credit kind
  for (int i = 0; i < 8; ++i)
  {
    CHECK(leaf.bytes[34 + i] == 0xFF);  // −1 micro
  }
  CHECK(leaf.bytes[49] == 9);
}

TEST_CASE("tx leaves refuse invalid transactions")
{
  Transaction tx = make_tx("alice", "bob", 100, 0);
  tx.payment     = Amount{};
  CHECK_THROWS_AS(encode_tx_leaf(tx), std::invalid_argument);

  Transaction swapped = make_tx("alice", "bob", 100, 0);
  swapped.merchant.role = Role::Buyer;
  CHECK_THROWS_AS(encode_tx_leaf(swapped), std::invalid_argument);
}

TEST_CASE("commitment messages are constant-size regardless of batch")
{
  CHECK(kCommitmentMessageBytes == 41);
  auto message = encode_commitment_message(EpochIndex{258}, LeafKind::Credit,
                                           fake_root(0xAB));
  REQUIRE(message.size() == kCommitmentMessageBytes);
  // epoch 258 = 0x0102 big-endian.
  CHECK(message[6] == 0x01);
  CHECK(message[7] == 0x02);
  CHECK(message[8] == 0x02);  // kind byte
  CHECK(message[9] == 0xAB);  // first root byte
}

TEST_CASE("ledger accepts consecutive epochs inside their windows")
{
  RootLedger ledger;  // default slack: one extra epoch

  auto r0 = ledger.submit(EpochIndex{0}, RootKind::TxRoot, fake_root(1),
                          Hours{4});
  CHECK(r0.accepted);
  CHECK(ledger.next_expected(RootKind::TxRoot) == EpochIndex{1});

  // Root kinds advance independently.
  CHECK(ledger.next_expected(RootKind::CreditRoot) == EpochIndex{0});
  auto c0 = ledger.submit(EpochIndex{0}, RootKind::CreditRoot, fake_root(2),
                          Hours{4});
  CHECK(c0.accepted);

  auto r1 = ledger.submit(EpochIndex{1}, RootKind::TxRoot, fake_root(3),
                          Hours{8});
  CHECK(r1.accepted);
  CHECK(ledger.entries().size() == 3);
  CHECK(ledger.committed(EpochIndex{0}, RootKind::TxRoot) == fake_root(1));
  CHECK(ledger.committed(EpochIndex{1}, RootKind::CreditRoot) ==
        std::nullopt);
}

TEST_CASE("ledger rejections carry the precise reason")
{
  RootLedger ledger;
  REQUIRE(ledger
              .submit(EpochIndex{0}, RootKind::TxRoot, fake_root(1), Hours{4})
              .accepted);
  REQUIRE(ledger
              .submit(EpochIndex{1}, RootKind::TxRoot, fake_root(2), Hours{8})
              .accepted);

  SUBCASE("duplicate: the most recently committed epoch")
  {
    auto r = ledger.submit(EpochIndex{1}, RootKind::TxRoot, fake_root(9),
                           Hours{8});
    CHECK_FALSE(r.accepted);
    CHECK(r.reason == RejectReason::DuplicateEpoch);
    // The original digest stays untouched: append-only.
    CHECK(ledger.committed(EpochIndex{1}, RootKind::TxRoot) == fake_root(2));
  }
  SUBCASE("stale: an epoch behind the committed frontier")
  {
    auto r = ledger.submit(EpochIndex{0}, RootKind::TxRoot, fake_root(9),
                           Hours{8});
    CHECK_FALSE(r.accepted);
    CHECK(r.reason == RejectReason::StaleEpoch);
  }
  SUBCASE("window closed: the next epoch, submitted too late")
  {
    // Epoch 2 spans [8, 12); with one epoch of slack the window shuts
    // after hour 16.
    auto late = ledger.submit(EpochIndex{2}, RootKind::TxRoot, fake_root(9),
                              Hours{17});
    CHECK_FALSE(late.accepted);
    CHECK(late.reason == RejectReason::WindowClosed);

    auto boundary = ledger.submit(EpochIndex{2}, RootKind::TxRoot,
                                  fake_root(9), Hours{16});
    CHECK(boundary.accepted);
  }
  SUBCASE("window closed: the next epoch, submitted before it starts")
  {
    auto early = ledger.submit(EpochIndex{2}, RootKind::TxRoot, fake_root(9),
                               Hours{7});
    CHECK_FALSE(early.accepted);
    CHECK(early.reason == RejectReason::WindowClosed);
  }
  SUBCASE("skipping ahead is refused")
  {
    auto r = ledger.submit(EpochIndex{3}, RootKind::TxRoot, fake_root(9),
                           Hours{14});
    CHECK_FALSE(r.accepted);
    CHECK(r.reason == RejectReason::NotNextEpoch);
  }
  CHECK(ledger.entries().size() >= 2);
}

TEST_CASE("honest aggregation leaves every staged leaf provable")
{
  RootLedger ledger;
  Aggregator aggregator{ledger};
  auto       batch = staged_batch(5, 0);
  aggregator.stage_batch(EpochIndex{0}, RootKind::TxRoot, batch);

  EffectReport report = aggregator.step(Honest{}, Hours{4});
  REQUIRE(report.submissions.size() == 1);
  CHECK(report.submissions[0].result.accepted);
  CHECK(report.entries_after == report.entries_before + 1);
  REQUIRE(report.proof_checks.size() == 5);
  for (auto const &check : report.proof_checks)
  {
    CHECK(check.proof_available);
    CHECK(check.verified);
  }
}

TEST_CASE("omission makes exactly the omitted leaf unprovable")
{
  for (std::size_t omitted = 0; omitted < 5; ++omitted)
  {
    RootLedger ledger;
    Aggregator aggregator{ledger};
    aggregator.stage_batch(EpochIndex{0}, RootKind::TxRoot, staged_batch(5, 0));

    EffectReport report =
        aggregator.step(OmitLeaf{omitted}, Hours{4});
    REQUIRE(report.submissions.size() == 1);
    CHECK(report.submissions[0].result.accepted);  // the root itself is fine
    REQUIRE(report.proof_checks.size() == 5);
    for (std::size_t i = 0; i < 5; ++i)
    {
      CHECK(report.proof_checks[i].proof_available == (i != omitted));
      CHECK(report.proof_checks[i].verified == (i != omitted));
    }
  }
}

TEST_CASE("stale recommits and equivocation bounce off the ledger")
{
  RootLedger ledger;
  REQUIRE(ledger
              .submit(EpochIndex{0}, RootKind::TxRoot, fake_root(1), Hours{4})
              .accepted);
  REQUIRE(ledger
              .submit(EpochIndex{1}, RootKind::TxRoot, fake_root(2), Hours{8})
              .accepted);

  Aggregator aggregator{ledger};
  aggregator.stage_batch(EpochIndex{2}, RootKind::TxRoot, staged_batch(3, 2));

  SUBCASE("stale root attempt")
  {
    EffectReport report = aggregator.step(StaleRoot{}, Hours{12});
    REQUIRE(report.submissions.size() == 1);
    CHECK_FALSE(report.submissions[0].result.accepted);
    CHECK(report.submissions[0].result.reason == RejectReason::StaleEpoch);
    CHECK(report.entries_after == report.entries_before);
    // Nothing was committed for the staged epoch, so nothing is provable.
    for (auto const &check : report.proof_checks)
    {
      CHECK_FALSE(check.proof_available);
      CHECK_FALSE(check.verified);
    }
  }
  SUBCASE("equivocation: second root for the same epoch is refused")
  {
    EffectReport report = aggregator.step(Equivocate{}, Hours{12});
    REQUIRE(report.submissions.size() == 2);
    CHECK(report.submissions[0].result.accepted);
    CHECK_FALSE(report.submissions[1].result.accepted);
    CHECK(report.submissions[1].result.reason ==
          RejectReason::DuplicateEpoch);
    CHECK(report.entries_after == report.entries_before + 1);
    // The first (honest) root won; every staged leaf remains provable.
    for (auto const &check : report.proof_checks)
    {
      CHECK(check.proof_available);
      CHECK(check.verified);
    }
  }
}
