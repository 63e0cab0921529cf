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

#include "epochpay/hash.hpp"
#include "epochpay/time.hpp"

#include <optional>
#include <string>
#include <vector>

namespace epochpay {

enum class RootKind : std::uint8_t
{
  TxRoot     = 0x01,
  CreditRoot = 0x02,
};

std::string to_string(RootKind kind);

enum class RejectReason
{
  /// The epoch's root of this kind is already on the ledger.
  DuplicateEpoch,
  /// The epoch lies behind an already-committed newer epoch.
  StaleEpoch,
  /// Submission arrived outside the epoch's acceptance window.
  WindowClosed,
  /// Epochs must be committed consecutively; this one skips ahead.
  NotNextEpoch,
};

std::string to_string(RejectReason reason);

struct SubmitResult
{
  bool                        accepted = false;
  std::optional<RejectReason> reason;
};

struct LedgerEntry
{
  EpochIndex epoch{};
  RootKind   kind = RootKind::TxRoot;
  Digest32   digest{};
  Hours      accepted_at{};
};

/// Append-only per-kind sequence of epoch roots, modelling the on-chain
/// contract's storage. Each root kind advances independently but strictly in
/// epoch order; an accepted entry is immutable forever after. The class is a
/// single-writer object: the model settles epochs serially, mirroring the
/// total order a chain imposes on transactions.
class RootLedger
{
public:
  /// `submission_window_extra` extends acceptance past the epoch's end — a
  /// root for epoch e is accepted at times [start(e), end(e) + extra].
  /// The default grants one full epoch of slack.
  explicit RootLedger(Hours submission_window_extra = Hours{kEpochHours})
    : window_extra_{submission_window_extra}
  {}

  SubmitResult submit(EpochIndex epoch, RootKind kind, const Digest32 &digest,
                      Hours now);

  /// Next epoch the ledger will accept for this kind (0 when empty).
  EpochIndex next_expected(RootKind kind) const;

  std::optional<Digest32> committed(EpochIndex epoch, RootKind kind) const;

  const std::vector<LedgerEntry> &entries() const { return entries_; }

private:
  Hours                    window_extra_;
  std::vector<LedgerEntry> entries_;
  std::uint64_t            next_tx_     = 0;
  std::uint64_t            next_credit_ = 0;
};

}  // namespace epochpay
