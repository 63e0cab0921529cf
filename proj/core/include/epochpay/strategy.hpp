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

#include "epochpay/actions.hpp"
#include "epochpay/ids.hpp"
#include "epochpay/signal.hpp"
#include "epochpay/time.hpp"

#include <optional>
#include <span>
#include <variant>

namespace epochpay::sim {

/// Deterministic public strategies: policies map the public signal history
/// to an action (or to sitting the epoch out), and to nothing else — private
/// state never enters the decision.
struct AlwaysConform
{};

struct AlwaysLate
{};

struct DefaultAtEpoch
{
  std::uint64_t epoch = 0;
};

/// Conform while the public history is clean; withdraw from trade forever
/// after the first observed default, anyone's.
struct GrimConform
{};

/// Conform everywhere except a single scripted epoch — the deviation probe
/// used by the one-shot-deviation scanner.
struct DeviateOnceAt
{
  std::uint64_t epoch  = 0;
  Action        action = BuyerAction::PayLate;
};

using Strategy = std::variant<AlwaysConform, AlwaysLate, DefaultAtEpoch,
                              GrimConform, DeviateOnceAt>;

/// The action a strategy plays at `epoch` given the public history, or
/// nullopt to withdraw (no trade, no settlement effects, zero stage payoff).
std::optional<Action> decide(const Strategy &strategy, Role role,
                             std::span<const PublicSignal> history,
                             EpochIndex                    epoch);

}  // namespace epochpay::sim
