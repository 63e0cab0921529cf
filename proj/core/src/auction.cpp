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

#include "epochpay/ratio.hpp"

#include <algorithm>

namespace epochpay {

void AuctionRegistry::claim(const AgentId &buyer, EpochIndex epoch)
{
  if (!claimed_.emplace(buyer, epoch.index).second)
  {
    throw AuctionError(AuctionErrorCode::SecondAuctionSameEpoch,
                       "auction: buyer already ran an auction this epoch");
  }
}

Auction open_auction(const AgentId &buyer, Amount deficit, Rate cap,
                     EpochIndex epoch, AuctionRegistry &registry)
{
  if (deficit <= Amount{})
  {
    throw AuctionError(AuctionErrorCode::ZeroDeficit,
                       "auction: deficit must be positive");
  }
  registry.claim(buyer, epoch);
  return Auction{AuctionConfig{buyer, deficit, cap, epoch}};
}

Digest32 Auction::bid_digest(Rate rate, const Nonce32 &nonce,
                             const AgentId &guarantor)
{
  std::array<std::uint8_t, 8> rate_be{};
  for (int i = 0; i < 8; ++i)
  {
    rate_be[static_cast<std::size_t>(i)] =
        static_cast<std::uint8_t>(rate.ppm >> (56 - 8 * i));
  }
  std::span<const std::uint8_t> parts[] = {
      std::span<const std::uint8_t>(rate_be),
      std::span<const std::uint8_t>(nonce),
      std::span<const std::uint8_t>(guarantor.id),
  };
  return sha256_concat(parts);
}

Amount Auction::locked_total() const
{
  Amount total{};
  for (auto const &[id, entry] : entries_)
  {
    total += entry.locked;
  }
  return total;
}

void Auction::commit_bid(const AgentId &guarantor, const Digest32 &digest,
                         Amount available_stake)
{
  if (phase_ != AuctionPhase::Commit)
  {
    throw AuctionError(AuctionErrorCode::WrongPhase,
                       "auction: commit outside the commit phase");
  }
  if (entries_.contains(guarantor))
  {
    throw AuctionError(AuctionErrorCode::DuplicateCommit,
                       "auction: guarantor already committed");
  }
  if (available_stake < required_lock())
  {
    throw AuctionError(AuctionErrorCode::InsufficientStake,
                       "auction: stake below the required lock");
  }
  entries_.emplace(guarantor, Entry{digest, required_lock(), {}, Rate{}});
}

void Auction::begin_reveal()
{
  if (phase_ != AuctionPhase::Commit)
  {
    throw AuctionError(AuctionErrorCode::WrongPhase,
                       "auction: reveal phase already opened or settled");
  }
  phase_ = AuctionPhase::Reveal;
}

RevealStatus Auction::reveal_bid(const AgentId &guarantor, Rate rate,
                                 const Nonce32 &nonce)
{
  if (phase_ != AuctionPhase::Reveal)
  {
    throw AuctionError(AuctionErrorCode::WrongPhase,
                       "auction: reveal outside the reveal phase");
  }
  auto it = entries_.find(guarantor);
  if (it == entries_.end())
  {
    throw AuctionError(AuctionErrorCode::NoPriorCommit,
                       "auction: reveal without a commitment");
  }
  Entry &entry = it->second;
  if (bid_digest(rate, nonce, guarantor) != entry.digest)
  {
    entry.reveal = RevealStatus::DigestMismatch;
    return RevealStatus::DigestMismatch;
  }
  if (rate > config_.cap)
  {
    entry.reveal = RevealStatus::OverCap;
    return RevealStatus::OverCap;
  }
  entry.reveal = RevealStatus::Valid;
  entry.rate   = rate;
  return RevealStatus::Valid;
}

AuctionOutcome Auction::settle()
{
  if (phase_ != AuctionPhase::Reveal)
  {
    throw AuctionError(AuctionErrorCode::WrongPhase,
                       "auction: settle requires a closed reveal phase");
  }
  phase_ = AuctionPhase::Settled;

  AuctionOutcome outcome;
  outcome.deficit = config_.deficit;

  // Admissible bids in (rate, id) order: front is the winner, the next
  // entry's rate is the Vickrey price.
  std::vector<std::pair<Rate, AgentId>> valid;
  for (auto const &[id, entry] : entries_)
  {
    if (entry.reveal == RevealStatus::Valid)
    {
      valid.emplace_back(entry.rate, id);
    }
    GuarantorResult result;
    result.guarantor = id;
    result.locked    = entry.locked;
    result.reveal    = entry.reveal;
    bool slashed = !entry.reveal.has_value() ||
                   entry.reveal == RevealStatus::DigestMismatch;
    result.disposition =
        slashed ? StakeDisposition::Slashed : StakeDisposition::Released;
    outcome.stakes.push_back(result);
  }
  std::sort(valid.begin(), valid.end(),
            [](auto const &a, auto const &b) {
              if (a.first != b.first)
              {
                return a.first < b.first;
              }
              return a.second.id < b.second.id;
            });

  if (valid.empty())
  {
    outcome.cleared = false;
    outcome.failure = AuctionFailure::NoAdmissibleBid;
    return outcome;
  }
  outcome.cleared       = true;
  outcome.winner        = valid.front().second;
  outcome.clearing_rate = valid.size() >= 2 ? valid[1].first : config_.cap;
  return outcome;
}

Amount auction_fee(Amount principal, Rate clearing_rate)
{
  BigInt micro = round_half_even_div(
      BigInt(principal.micro()) * BigInt(clearing_rate.ppm),
      BigInt(1'000'000));
  if (micro > INT64_MAX || micro < INT64_MIN)
  {
    throw OverflowError("auction_fee: result out of range");
  }
  return Amount::from_micro(micro.convert_to<std::int64_t>());
}

}  // namespace epochpay
