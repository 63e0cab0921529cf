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

#include "epochpay/strategy.hpp"

#include <algorithm>
#include <stdexcept>

namespace epochpay::sim {

namespace {

Action conforming_action(Role role)
{
  switch (role)
  {
  case Role::Buyer:
    return BuyerAction::PayOnTime;
  case Role::Merchant:
    return MerchantAction::DeliverOnTime;
  case Role::Guarantor:
    break;
  }
  throw std::invalid_argument("strategy: guarantors do not play stage actions");
}

Action late_action(Role role)
{
  switch (role)
  {
  case Role::Buyer:
    return BuyerAction::PayLate;
  case Role::Merchant:
    return MerchantAction::DeliverLate;
  case Role::Guarantor:
    break;
  }
  throw std::invalid_argument("strategy: guarantors do not play stage actions");
}

Action default_action(Role role)
{
  switch (role)
  {
  case Role::Buyer:
    return BuyerAction::Default;
  case Role::Merchant:
    return MerchantAction::FailToDeliver;
  case Role::Guarantor:
    break;
  }
  throw std::invalid_argument("strategy: guarantors do not play stage actions");
}

bool history_has_default(std::span<const PublicSignal> history)
{
  return std::any_of(history.begin(), history.end(),
                     [](const PublicSignal &signal) {
                       return std::any_of(signal.outcomes.begin(),
                                          signal.outcomes.end(),
                                          [](const AgentOutcome &outcome) {
                                            return outcome.defaulted;
                                          });
                     });
}

}  // namespace

std::optional<Action> decide(const Strategy &strategy, Role role,
                             std::span<const PublicSignal> history,
                             EpochIndex                    epoch)
{
  struct Visitor
  {
    Role                          role;
    std::span<const PublicSignal> history;
    EpochIndex                    epoch;

    std::optional<Action> operator()(const AlwaysConform &) const
    {
      return conforming_action(role);
    }

    std::optional<Action> operator()(const AlwaysLate &) const
    {
      return late_action(role);
    }

    std::optional<Action> operator()(const DefaultAtEpoch &s) const
    {
      if (epoch.index == s.epoch)
      {
        return default_action(role);
      }
      return conforming_action(role);
    }

    std::optional<Action> operator()(const GrimConform &) const
    {
      if (history_has_default(history))
      {
        return std::nullopt;
      }
      return conforming_action(role);
    }

    std::optional<Action> operator()(const DeviateOnceAt &s) const
    {
      if (epoch.index == s.epoch)
      {
        return s.action;
      }
      return conforming_action(role);
    }
  };

  return std::visit(Visitor{role, history, epoch}, strategy);
}

}  // namespace epochpay::sim
