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

#include "epochpay/ledger.hpp"

namespace epochpay {

std::string to_string(RootKind kind)
{
  return kind == RootKind::TxRoot ? "tx_root" : "credit_root";
}

std::string to_string(RejectReason reason)
{
  switch (reason)
  {
  case RejectReason::DuplicateEpoch:
    return "duplicate_epoch";
  case RejectReason::StaleEpoch:
    return "stale_epoch";
  case RejectReason::WindowClosed:
    return "window_closed";
  case RejectReason::NotNextEpoch:
    return "not_next_epoch";
  }
  return "unknown";
}

SubmitResult RootLedger::submit(EpochIndex epoch, RootKind kind,
                                const Digest32 &digest, Hours now)
{
  std::uint64_t &next =
      (kind == RootKind::TxRoot) ? next_tx_ : next_credit_;

  if (epoch.index < next)
  {
    // Already have this epoch (or a newer one). Resubmitting the most
    // recently committed epoch is a duplicate; anything older is stale.
    RejectReason reason = (epoch.index + 1 == next)
                              ? RejectReason::DuplicateEpoch
                              : RejectReason::StaleEpoch;
    return SubmitResult{false, reason};
  }
  if (epoch.index > next)
  {
    return SubmitResult{false, RejectReason::NotNextEpoch};
  }
  if (now < epoch_start(epoch) || now > epoch_end(epoch) + window_extra_)
  {
    return SubmitResult{false, RejectReason::WindowClosed};
  }
  entries_.push_back(LedgerEntry{epoch, kind, digest, now});
  next = epoch.index + 1;
  return SubmitResult{true, std::nullopt};
}

EpochIndex RootLedger::next_expected(RootKind kind) const
{
  return EpochIndex{kind == RootKind::TxRoot ? next_tx_ : next_credit_};
}

std::optional<Digest32> RootLedger::committed(EpochIndex epoch,
                                              RootKind   kind) const
{
  for (auto const &entry : entries_)
  {
    if (entry.kind == kind && entry.epoch == epoch)
    {
      return entry.digest;
    }
  }
  return std::nullopt;
}

}  // namespace epochpay
