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
#include "epochpay/ids.hpp"
#include "epochpay/money.hpp"
#include "epochpay/time.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace epochpay {

/// Single-epoch reverse Vickrey auction for funding a buyer's over-limit
/// deficit: stake-backed guarantors commit sealed bids (an annualized-style
/// borrowing rate in ppm applied flat to the principal), then reveal; the
/// lowest admissible bid wins and is paid the second-lowest admissible rate,
/// or the buyer's cap when it stands alone (reserve price).
struct AuctionConfig
{
  AgentId    buyer{};
  Amount     deficit{};
  Rate       cap{};  // protocol-enforced ceiling on the borrowing cost
  EpochIndex epoch{};
};

enum class AuctionPhase
{
  Commit,
  Reveal,
  Settled,
};

enum class AuctionErrorCode
{
  SecondAuctionSameEpoch,
  ZeroDeficit,
  DuplicateCommit,
  InsufficientStake,
  WrongPhase,
  NoPriorCommit,
};

class AuctionError : public std::runtime_error
{
public:
  AuctionError(AuctionErrorCode code, const std::string &what)
    : std::runtime_error(what)
    , code_{code}
  {}

  AuctionErrorCode code() const { return code_; }

private:
  AuctionErrorCode code_;
};

using Nonce32 = std::array<std::uint8_t, 32>;

enum class RevealStatus
{
  Valid,
  OverCap,         // honest reveal, bid above the cap: rejected, not slashed
  DigestMismatch,  // reveal does not open the commitment: slashed
};

enum class StakeDisposition
{
  Released,
  Slashed,
};

struct GuarantorResult
{
  AgentId                     guarantor{};
  Amount                      locked{};
  StakeDisposition            disposition = StakeDisposition::Released;
  std::optional<RevealStatus> reveal;  // empty: never revealed (slashed)
};

enum class AuctionFailure
{
  NoAdmissibleBid,  // zero valid reveals: the deficit stays unfunded
};

struct AuctionOutcome
{
  bool                          cleared = false;
  std::optional<AuctionFailure> failure;          // set iff !cleared
  AgentId                       winner{};         // meaningful iff cleared
  Rate                          clearing_rate{};  // meaningful iff cleared
  Amount                        deficit{};
  std::vector<GuarantorResult>  stakes;  // one per commitment, id order
};

/// Enforces "at most one auction per buyer per epoch" across a scenario.
class AuctionRegistry
{
public:
  /// Records the request; throws SecondAuctionSameEpoch on a repeat.
  void claim(const AgentId &buyer, EpochIndex epoch);

private:
  std::set<std::pair<AgentId, std::uint64_t>> claimed_;
};

class Auction
{
public:
  /// Digest bound by a commitment: SHA-256 over
  /// rate (8-byte big-endian ppm) ‖ nonce (32 bytes) ‖ guarantor id (32 bytes).
  static Digest32 bid_digest(Rate rate, const Nonce32 &nonce,
                             const AgentId &guarantor);

  const AuctionConfig &config() const { return config_; }
  AuctionPhase         phase() const { return phase_; }

  /// Stake a guarantor must lock to bid: the full deficit they would fund.
  Amount required_lock() const { return config_.deficit; }

  /// Total stake currently locked behind live commitments.
  Amount locked_total() const;

  void commit_bid(const AgentId &guarantor, const Digest32 &digest,
                  Amount available_stake);

  void begin_reveal();

  RevealStatus reveal_bid(const AgentId &guarantor, Rate rate,
                          const Nonce32 &nonce);

  /// Closes the reveal phase and determines the outcome. Winner and losers
  /// get their stake released; unrevealed or mismatched commitments are
  /// slashed. Exactly once per auction.
  AuctionOutcome settle();

private:
  friend Auction open_auction(const AgentId &buyer, Amount deficit, Rate cap,
                              EpochIndex epoch, AuctionRegistry &registry);

  explicit Auction(AuctionConfig config) : config_{config} {}

  struct Entry
  {
    Digest32                    digest{};
    Amount                      locked{};
    std::optional<RevealStatus> reveal;
    Rate                        rate{};  // meaningful iff reveal == Valid
  };

  AuctionConfig             config_;
  AuctionPhase              phase_ = AuctionPhase::Commit;
  std::map<AgentId, Entry>  entries_;
};

/// Opens the commit phase for a buyer's deficit. Throws ZeroDeficit and
/// SecondAuctionSameEpoch as AuctionError.
Auction open_auction(const AgentId &buyer, Amount deficit, Rate cap,
                     EpochIndex epoch, AuctionRegistry &registry);

/// Flat borrowing fee on a funded principal at the clearing rate:
/// round-half-even(principal × rate / 10^6) in micro-units.
Amount auction_fee(Amount principal, Rate clearing_rate);

}  // namespace epochpay
