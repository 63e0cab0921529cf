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

#include <epochpay/accounts.hpp>
#include <epochpay/phase.hpp>

#include <doctest.h>

using namespace epochpay;

namespace {

BuyerAccount account_with_limit(std::int64_t limit_units)
{
  BuyerAccount account;
  account.credit_limit = Amount::from_units(limit_units);
  return account;
}

}  // namespace

TEST_CASE("authorization consumes credit only inside the limit")
{
  BuyerAccount account = account_with_limit(100);
  Ratio        bound{1, 4};

  auto first = authorize_payment(account, Amount::from_units(90), bound);
  CHECK(std::holds_alternative<Approved>(first));
  CHECK(account.used == Amount::from_units(90));

  // 90 + 20 = 110: a 10-unit deficit, within the 25-unit risk bound. The
  // over-limit verdict consumes nothing — only auction funding would.
  auto second = authorize_payment(account, Amount::from_units(20), bound);
  REQUIRE(std::holds_alternative<OverLimit>(second));
  CHECK(std::get<OverLimit>(second).deficit == Amount::from_units(10));
  CHECK(account.used == Amount::from_units(90));
  CHECK_FALSE(account.misuse_flag);
}

TEST_CASE("the risk bound is an exact rational boundary")
{
  Ratio bound{1, 4};

  // Deficit equal to bound·CL is still admissible…
  BuyerAccount at_edge = account_with_limit(100);
  at_edge.used         = Amount::from_units(100);
  auto edge = authorize_payment(at_edge, Amount::from_units(25), bound);
  CHECK(std::holds_alternative<OverLimit>(edge));
  CHECK_FALSE(at_edge.misuse_flag);

  // …one micro-unit more is misuse, and the flag sticks.
  BuyerAccount past = account_with_limit(100);
  past.used          = Amount::from_units(100);
  auto flagged = authorize_payment(
      past, Amount::from_units(25) + Amount::from_micro(1), bound);
  CHECK(std::holds_alternative<RejectedMisuse>(flagged));
  CHECK(past.misuse_flag);
  CHECK(past.used == Amount::from_units(100));
}

TEST_CASE("authorization rejects nonsense inputs loudly")
{
  BuyerAccount account = account_with_limit(10);
  CHECK_THROWS_AS(authorize_payment(account, Amount{}, Ratio{1, 4}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      authorize_payment(account, Amount::from_units(1), Ratio{-1, 4}),
      std::invalid_argument);

  account.alive = false;
  CHECK_THROWS_AS(authorize_payment(account, Amount::from_units(1),
                                    Ratio{1, 4}),
                  std::logic_error);
}

TEST_CASE("credit limits grow, shrink, and collapse by outcome")
{
  CreditPolicy policy;
  policy.growth      = Amount::from_units(4);
  policy.contraction = Amount::from_units(4);

  BuyerAccount account = account_with_limit(100);
  CHECK(credit_update(account, CreditOutcome::Conform, policy) ==
        Amount::from_units(104));
  CHECK(credit_update(account, CreditOutcome::Late, policy) ==
        Amount::from_units(96));
  CHECK(credit_update(account, CreditOutcome::Default, policy) == Amount{});

  SUBCASE("growth clamps at the cap")
  {
    policy.cap = Amount::from_units(102);
    CHECK(credit_update(account, CreditOutcome::Conform, policy) ==
          Amount::from_units(102));
  }
  SUBCASE("contraction clamps at the floor, never below zero")
  {
    BuyerAccount small = account_with_limit(3);
    CHECK(credit_update(small, CreditOutcome::Late, policy) == Amount{});
    policy.floor = Amount::from_units(2);
    CHECK(credit_update(small, CreditOutcome::Late, policy) ==
          Amount::from_units(2));
  }
  SUBCASE("dead accounts cannot be updated")
  {
    account.alive = false;
    CHECK_THROWS_AS(credit_update(account, CreditOutcome::Conform, policy),
                    std::logic_error);
  }
}

TEST_CASE("the trust phase machine walks punishment then recovery")
{
  PhaseConfig config;  // T = 3, recovery levels = 3
  PenaltyPhase phase = PenaltyPhase::normal();
  CHECK_FALSE(phase.rewards_suspended());

  // A deviation starts a full three-epoch suspension.
  phase = step_phase(phase, false, config);
  CHECK(phase == PenaltyPhase::punishment(3));
  CHECK(phase.rewards_suspended());
  CHECK(phase.to_string() == "punishment(3)");

  // Conforming serves the spell down, then climbs recovery.
  phase = step_phase(phase, true, config);
  CHECK(phase == PenaltyPhase::punishment(2));
  phase = step_phase(phase, true, config);
  CHECK(phase == PenaltyPhase::punishment(1));
  phase = step_phase(phase, true, config);
  CHECK(phase == PenaltyPhase::recovery(0));
  CHECK_FALSE(phase.rewards_suspended());
  phase = step_phase(phase, true, config);
  CHECK(phase == PenaltyPhase::recovery(1));
  phase = step_phase(phase, true, config);
  CHECK(phase == PenaltyPhase::recovery(2));
  phase = step_phase(phase, true, config);
  CHECK(phase == PenaltyPhase::normal());

  // A slip during recovery restarts the whole clock.
  PenaltyPhase slipped = step_phase(PenaltyPhase::recovery(2), false, config);
  CHECK(slipped == PenaltyPhase::punishment(3));
  // As does one during punishment.
  CHECK(step_phase(PenaltyPhase::punishment(1), false, config) ==
        PenaltyPhase::punishment(3));
}
