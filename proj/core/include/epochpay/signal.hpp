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
#include "epochpay/money.hpp"
#include "epochpay/phase.hpp"
#include "epochpay/time.hpp"

#include <vector>

namespace epochpay {

/// What the public can observe about one agent after an epoch settles. The
/// signal deliberately carries settlement outcomes, not private valuations:
/// strategies may condition on it, and only on it.
struct AgentOutcome
{
  AgentId      agent{};
  Action       action = BuyerAction::PayOnTime;
  Amount       penalties{};   // total paid into the penalty pool this epoch
  Amount       rewards{};     // total received from the reward pool this epoch
  int          trust_after = 0;
  PenaltyPhase phase_after{};
  bool         misuse_flag = false;
  bool         defaulted   = false;
};

/// Public monitoring signal for one settled epoch, in deterministic
/// (id-sorted) agent order.
struct PublicSignal
{
  EpochIndex                epoch{};
  std::vector<AgentOutcome> outcomes;
};

}  // namespace epochpay
