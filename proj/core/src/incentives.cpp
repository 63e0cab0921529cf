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

#include "epochpay/incentives.hpp"

#include <algorithm>
#include <stdexcept>

namespace epochpay::incentives {

namespace {

Amount sum(const std::vector<Amount> &xs)
{
  Amount total{};
  for (Amount x : xs)
  {
    total += x;
  }
  return total;
}

Ratio units(Amount a)
{
  return Ratio::from_amount(a);
}

void require_same_length(std::size_t expected, std::size_t got,
                         const char *what)
{
  if (expected != got)
  {
    throw std::invalid_argument(std::string("params: per-tx list length "
                                            "mismatch on ") +
                                what);
  }
}

void require_unit_interval(const Ratio &delta)
{
  if (delta.is_negative() || delta >= Ratio::from_int(1))
  {
    throw std::domain_error("discount factor must lie in [0, 1)");
  }
}

}  // namespace

void validate(const MerchantParams &p)
{
  std::size_t n = p.payments.size();
  require_same_length(n, p.fees.size(), "fees");
  require_same_length(n, p.exec_costs.size(), "exec_costs");
  require_same_length(n, p.freshness_rewards.size(), "freshness_rewards");
  require_same_length(n, p.spoilages.size(), "spoilages");
  require_same_length(n, p.late_penalties.size(), "late_penalties");
  require_same_length(n, p.default_penalties.size(), "default_penalties");
  if (p.punishment_epochs < 0)
  {
    throw std::invalid_argument("params: negative punishment length");
  }
}

void validate(const BuyerParams &p)
{
  std::size_t n = p.service_values.size();
  require_same_length(n, p.payments.size(), "payments");
  require_same_length(n, p.spoilages.size(), "spoilages");
  require_same_length(n, p.late_penalties.size(), "late_penalties");
  if (p.stake < Amount{} || p.credit_limit < Amount{})
  {
    throw std::invalid_argument("params: stake and credit limit must be ≥ 0");
  }
  if (p.credit_weight.is_negative())
  {
    throw std::invalid_argument("params: credit weight must be ≥ 0");
  }
  if (sum(p.payments) > p.max_exposure)
  {
    throw std::invalid_argument(
        "params: aggregate payments exceed the exposure bound");
  }
  if (p.punishment_epochs < 0)
  {
    throw std::invalid_argument("params: negative punishment length");
  }
}

StageUtilities merchant_utilities(const MerchantParams &p)
{
  validate(p);
  Amount margin_sum{};   // Σ (v − fee − exec + rfm)
  Amount late_sum{};     // Σ (v − fee − exec + rfm + psi − plm)
  Amount default_sum{};  // Σ (v + psi − pdm)
  for (std::size_t k = 0; k < p.payments.size(); ++k)
  {
    Amount served = p.payments[k] - p.fees[k] - p.exec_costs[k] +
                    p.freshness_rewards[k];
    margin_sum += served;
    late_sum += served + p.spoilages[k] - p.late_penalties[k];
    default_sum += p.payments[k] + p.spoilages[k] - p.default_penalties[k];
  }
  StageUtilities u;
  u.conform         = units(margin_sum + p.stake_reward - p.stake_cost);
  u.late            = units(late_sum + p.stake_reward - p.stake_cost);
  u.deviate_default = units(default_sum - p.stake_cost);
  return u;
}

StageUtilities buyer_utilities(const BuyerParams &p)
{
  validate(p);
  Amount surplus_sum{};  // Σ (w − v)
  Amount late_sum{};     // Σ (w − v + psi − plb)
  Amount default_sum{};  // Σ (w + psi)
  for (std::size_t k = 0; k < p.service_values.size(); ++k)
  {
    Amount surplus = p.service_values[k] - p.payments[k];
    surplus_sum += surplus;
    late_sum += surplus + p.spoilages[k] - p.late_penalties[k];
    default_sum += p.service_values[k] + p.spoilages[k];
  }
  StageUtilities u;
  u.conform = units(surplus_sum + p.timeliness_reward + p.stake_reward -
                    p.stake_cost) +
              p.credit_weight * units(p.credit_reward);
  u.late = units(late_sum + p.stake_reward - p.financing_cost - p.stake_cost) -
           p.credit_weight * units(p.credit_contraction);
  u.deviate_default = units(default_sum - p.stake - p.stake_cost) -
                      p.credit_weight * units(p.credit_limit);
  return u;
}

Ratio merchant_punishment_utility(const MerchantParams &p)
{
  validate(p);
  Amount served{};
  for (std::size_t k = 0; k < p.payments.size(); ++k)
  {
    served += p.payments[k] - p.fees[k] - p.exec_costs[k];
  }
  return units(served - p.stake_cost);
}

Ratio buyer_punishment_utility(const BuyerParams &p)
{
  validate(p);
  Amount surplus{};
  for (std::size_t k = 0; k < p.service_values.size(); ++k)
  {
    surplus += p.service_values[k] - p.payments[k];
  }
  return units(surplus - p.stake_cost);
}

bool IncentiveReport::all_hold() const
{
  return std::all_of(conditions.begin(), conditions.end(),
                     [](const ConditionResult &c) { return c.holds; });
}

namespace {

ConditionResult make_condition(std::string name, bool strict, Ratio margin)
{
  ConditionResult c;
  c.name   = std::move(name);
  c.strict = strict;
  c.margin = std::move(margin);
  c.holds  = strict ? (c.margin > Ratio{}) : (c.margin >= Ratio{});
  if (strict && c.margin == Ratio{})
  {
    c.note = "boundary: fails strict";
  }
  return c;
}

/// min_k (penalty_k − drag_k), vacuous-true on an empty batch.
ConditionResult penalty_dominance(const char                *name,
                                  const std::vector<Amount> &penalties,
                                  const std::vector<Amount> &drags)
{
  if (penalties.empty())
  {
    ConditionResult c;
    c.name   = name;
    c.strict = true;
    c.holds  = true;
    c.note   = "vacuous: no transactions";
    return c;
  }
  Amount worst = penalties[0] - drags[0];
  for (std::size_t k = 1; k < penalties.size(); ++k)
  {
    worst = std::min(worst, penalties[k] - drags[k]);
  }
  return make_condition(name, true, Ratio::from_amount(worst));
}

}  // namespace

IncentiveReport check_merchant_conditions(const MerchantParams &p)
{
  validate(p);
  IncentiveReport report;
  report.utilities = merchant_utilities(p);

  // (a) Per-tx late penalty strictly exceeds the alternative-use value, so
  // delaying any single transaction is unprofitable on its own.
  report.conditions.push_back(penalty_dominance(
      "late_penalty_dominance", p.late_penalties, p.spoilages));

  // (b) Bounded-liability liveness: stake reward plus default penalties
  // strictly exceed the off-protocol gain cap plus net per-tx drag.
  Amount lhs = p.stake_reward + sum(p.default_penalties);
  Amount rhs = p.liability_cap + sum(p.fees) + sum(p.late_penalties) -
               sum(p.freshness_rewards);
  report.conditions.push_back(
      make_condition("bounded_liability", true, units(lhs - rhs)));

  // (c) Full stage ordering conform ≻ late ≻ default.
  Ratio order_margin =
      std::min(report.utilities.conform - report.utilities.late,
               report.utilities.late - report.utilities.deviate_default);
  report.conditions.push_back(
      make_condition("conforming_order", true, order_margin));

  // (d) Participation: protocol rewards cover execution, fees and the stake
  // carrying cost.
  Amount reward_side = sum(p.freshness_rewards) + p.stake_reward;
  Amount cost_side   = sum(p.exec_costs) + sum(p.fees) + p.stake_cost;
  report.conditions.push_back(make_condition(
      "participation_ir", false, units(reward_side - cost_side)));

  return report;
}

SuspensionLoss suspension_loss(const Ratio &delta, int punishment_epochs,
                               Amount loss_floor)
{
  require_unit_interval(delta);
  if (punishment_epochs < 0)
  {
    throw std::invalid_argument("suspension_loss: negative length");
  }
  Ratio floor = Ratio::from_amount(loss_floor);
  Ratio one   = Ratio::from_int(1);

  SuspensionLoss out;
  out.bound = (one - delta.pow(static_cast<unsigned>(punishment_epochs))) /
              (one - delta) * floor;
  for (int tau = 1; tau <= punishment_epochs; ++tau)
  {
    out.exact_sum += delta.pow(static_cast<unsigned>(tau - 1)) * floor;
  }
  return out;
}

bool verify_merchant_ppe(const MerchantParams &p)
{
  // The stage ordering is δ-free and the continuation loss is a sum of
  // non-negative terms whenever the loss floor is non-negative, so "for all
  // δ in [0,1)" reduces to two symbolic facts.
  IncentiveReport report = check_merchant_conditions(p);
  bool ordering = false;
  for (auto const &c : report.conditions)
  {
    if (c.name == "conforming_order")
    {
      ordering = c.holds;
    }
  }
  return ordering && p.loss_floor >= Amount{};
}

ThresholdResult delta_threshold(Amount max_exposure, Amount stake,
                                const Ratio &baseline)
{
  ThresholdResult out;
  if (stake >= max_exposure)
  {
    // Full collateralization or better: the deviation gain is non-positive
    // at any δ, so no patience is needed at all.
    out.kind  = ThresholdResult::Kind::OverCollateralized;
    out.value = Ratio{};
    return out;
  }
  Ratio gain = Ratio::from_amount(max_exposure - stake);
  if (baseline <= Ratio{})
  {
    // Nothing to lose by defaulting: the threshold would be 1.
    out.kind  = ThresholdResult::Kind::NoDeterrence;
    out.value = Ratio::from_int(1);
    return out;
  }
  out.kind  = ThresholdResult::Kind::Ok;
  out.value = gain / (gain + baseline);
  return out;
}

namespace {

Ratio buyer_baseline(const BuyerParams &p, const StageUtilities &u)
{
  return p.baseline ? *p.baseline : u.conform;
}

}  // namespace

IncentiveReport check_buyer_conditions(const BuyerParams &p)
{
  validate(p);
  require_unit_interval(p.discount);

  IncentiveReport report;
  report.utilities = buyer_utilities(p);
  Ratio u_bar      = buyer_baseline(p, report.utilities);
  Ratio one        = Ratio::from_int(1);

  // (a) Per-tx late penalty strictly exceeds the deviation-epoch drag.
  report.conditions.push_back(penalty_dominance(
      "late_penalty_dominance", p.late_penalties, p.spoilages));

  // (b) Discount factor at or above the deterrence threshold.
  ThresholdResult threshold =
      delta_threshold(p.max_exposure, p.stake, u_bar);
  if (threshold.kind == ThresholdResult::Kind::NoDeterrence)
  {
    ConditionResult c;
    c.name   = "delta_threshold";
    c.strict = false;
    c.holds  = false;
    c.margin = p.discount - one;  // any δ < 1 falls short
    c.note   = "no deterrence: zero continuation value";
    report.conditions.push_back(std::move(c));
  }
  else
  {
    report.conditions.push_back(make_condition(
        "delta_threshold", false, p.discount - threshold.value));
  }

  // (c) Stage ordering between the two live regimes.
  report.conditions.push_back(
      make_condition("conforming_order", true,
                     report.utilities.conform - report.utilities.late));

  // (d) Deterrence in continuation-value form:
  // δ·ū/(1−δ) ≥ worst-case exposure gain (v_max − stake).
  Ratio continuation = p.discount * u_bar / (one - p.discount);
  report.conditions.push_back(make_condition(
      "default_deterrence", false,
      continuation - Ratio::from_amount(p.max_exposure - p.stake)));

  // (e) Participation: deferring settlement frees working capital worth
  // (Σv − stake)·r_opp for one epoch; that must cover the financing cost.
  // The margin stays an exact rational; rounding would only enter when the
  // benefit is materialized as an Amount.
  Ratio freed = Ratio::from_amount(sum(p.payments) - p.stake);
  Ratio benefit = freed *
                  Ratio(static_cast<std::int64_t>(p.opportunity_rate.ppm),
                        1'000'000) *
                  Ratio(kEpochHours, kHoursPerYear);
  report.conditions.push_back(make_condition(
      "participation_ir", false,
      benefit - Ratio::from_amount(p.financing_cost)));

  return report;
}

bool verify_buyer_ppe(const BuyerParams &p)
{
  validate(p);
  require_unit_interval(p.discount);

  StageUtilities u     = buyer_utilities(p);
  Ratio          u_bar = buyer_baseline(p, u);
  Ratio          one   = Ratio::from_int(1);

  // One-shot late deviation: immediate gain (u_late − u_conform), then a
  // punishment spell whose per-epoch loss is every suspended reward.
  Ratio suspended = Ratio::from_amount(p.timeliness_reward + p.stake_reward) +
                    p.credit_weight * Ratio::from_amount(p.credit_reward);
  Ratio geometric =
      (one - p.discount.pow(static_cast<unsigned>(p.punishment_epochs))) /
      (one - p.discount);
  Ratio gain_late = (u.late - u.conform) - p.discount * geometric * suspended;

  // One-shot default: worst-case stage gain (v_max − stake) against the
  // discounted continuation value of staying.
  Ratio gain_default = Ratio::from_amount(p.max_exposure - p.stake) -
                       p.discount * u_bar / (one - p.discount);

  return gain_late <= Ratio{} && gain_default <= Ratio{};
}

}  // namespace epochpay::incentives
