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

#include "epochpay/ids.hpp"
#include "epochpay/money.hpp"
#include "epochpay/time.hpp"
#include "epochpay/tx.hpp"

#include <cstdint>
#include <vector>

namespace epochpay {

/// Canonical byte encodings committed into per-epoch Merkle trees. The
/// layouts are fixed-width and big-endian so that a leaf has exactly one
/// serialisation:
///
///   transaction leaf (122 bytes):
///     [0]        version        (0x01)
///     [1]        kind           (0x01)
///     [2..33]    transaction id
///     [34..65]   buyer id
///     [66..97]   merchant id
///     [98..105]  payment        int64 micro-units, big-endian two's complement
///     [106..113] service value  int64 micro-units, big-endian two's complement
///     [114..121] epoch          uint64 big-endian
///
///   credit record leaf (50 bytes):
///     [0]        version        (0x01)
///     [1]        kind           (0x02)
///     [2..33]    agent id
///     [34..41]   remaining credit  int64 micro-units, big-endian
///     [42..49]   epoch             uint64 big-endian
enum class LeafKind : std::uint8_t
{
  Tx     = 0x01,
  Credit = 0x02,
};

inline constexpr std::uint8_t kLeafVersion     = 0x01;
inline constexpr std::size_t  kTxLeafBytes     = 122;
inline constexpr std::size_t  kCreditLeafBytes = 50;

struct LeafRecord
{
  LeafKind                  kind = LeafKind::Tx;
  std::vector<std::uint8_t> bytes;
};

LeafRecord encode_tx_leaf(const Transaction &tx);

LeafRecord encode_credit_leaf(const AgentId &agent, Amount remaining_credit,
                              EpochIndex epoch);

/// On-chain commitment message: epoch uint64 BE ‖ root kind byte ‖ digest.
/// Its size is constant regardless of batch size — that is the whole point
/// of the scheme.
inline constexpr std::size_t kCommitmentMessageBytes = 8 + 1 + 32;

std::vector<std::uint8_t> encode_commitment_message(EpochIndex epoch,
                                                    LeafKind   kind,
                                                    const Digest32 &root);

}  // namespace epochpay
