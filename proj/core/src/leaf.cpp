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

#include "epochpay/leaf.hpp"

namespace epochpay {

namespace {

void put_u64_be(std::vector<std::uint8_t> &out, std::uint64_t v)
{
  for (int shift = 56; shift >= 0; shift -= 8)
  {
    out.push_back(static_cast<std::uint8_t>(v >> shift));
  }
}

void put_i64_be(std::vector<std::uint8_t> &out, std::int64_t v)
{
  put_u64_be(out, static_cast<std::uint64_t>(v));
}

void put_id(std::vector<std::uint8_t> &out, const Id32 &id)
{
  out.insert(out.end(), id.begin(), id.end());
}

}  // namespace

LeafRecord encode_tx_leaf(const Transaction &tx)
{
  validate(tx);
  LeafRecord leaf;
  leaf.kind = LeafKind::Tx;
  leaf.bytes.reserve(kTxLeafBytes);
  leaf.bytes.push_back(kLeafVersion);
  leaf.bytes.push_back(static_cast<std::uint8_t>(LeafKind::Tx));
  put_id(leaf.bytes, tx.id);
  put_id(leaf.bytes, tx.buyer.id);
  put_id(leaf.bytes, tx.merchant.id);
  put_i64_be(leaf.bytes, tx.payment.micro());
  put_i64_be(leaf.bytes, tx.service_value.micro());
  put_u64_be(leaf.bytes, tx.epoch.index);
  return leaf;
}

LeafRecord encode_credit_leaf(const AgentId &agent, Amount remaining_credit,
                              EpochIndex epoch)
{
  LeafRecord leaf;
  leaf.kind = LeafKind::Credit;
  leaf.bytes.reserve(kCreditLeafBytes);
  leaf.bytes.push_back(kLeafVersion);
  leaf.bytes.push_back(static_cast<std::uint8_t>(LeafKind::Credit));
  put_id(leaf.bytes, agent.id);
  put_i64_be(leaf.bytes, remaining_credit.micro());
  put_u64_be(leaf.bytes, epoch.index);
  return leaf;
}

std::vector<std::uint8_t> encode_commitment_message(EpochIndex epoch,
                                                    LeafKind   kind,
                                                    const Digest32 &root)
{
  std::vector<std::uint8_t> out;
  out.reserve(kCommitmentMessageBytes);
  put_u64_be(out, epoch.index);
  out.push_back(static_cast<std::uint8_t>(kind));
  out.insert(out.end(), root.begin(), root.end());
  return out;
}

}  // namespace epochpay
