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

#include "epochpay/money.hpp"
#include "epochpay/ratio.hpp"

#include <optional>
#include <string>
#include <vector>

namespace epochpay::incentives {

/// Everything entering a merchant's epoch utility. Per-transaction lists are
/// index-aligned; epoch-level terms apply once per epoch.
///
/// Stage utility rows (worst-case convention: a late epoch delays every
/// transaction in the batch):
///
///   conform:  Σ_k (v_k − fee_k − exec_k + rfm_k) + rsm − cstake
///   late:     Σ_k (v_k − fee_k − exec_k + rfm_k + psi_k − plm_k) + rsm − cstake
///   default:  Σ_k (v_k + psi_k − pdm_k) − cstake
///
/// where v = payment, fee = protocol fee, exec = execution cost,
/// rfm = per-tx freshness reward, psi = alternative-use (spoilage) value,
/// plm/pdm = late/default penalties, rsm = epoch stake reward and
/// cstake = stake carrying cost.
struct MerchantParams
{
  std::vector<Amount> payments;           // v_k
  std::vector<Amount> fees;               // protocol fee per tx
  std::vector<Amount> exec_costs;         // merchant's execution cost per tx
  std::vector<Amount> freshness_rewards;  // per-tx timely-fulfilment reward
  std::vector<Amount> spoilages;          // alternative-use value per tx
  std::vector<Amount> late_penalties;     // per-tx late penalty
  std::vector<Amount> default_penalties;  // per-tx default penalty

  Amount stake_reward{};   // epoch reward on posted stake
  Amount stake_cost{};     // carrying cost of posted stake per epoch
  Amount liability_cap{};  // bound on off-protocol gain from one epoch

  int   punishment_epochs = 3;  // reward-suspension spell length
  Amount loss_floor{};          // per-epoch loss floor while suspended
  Ratio  discount{};            // δ
};

/// Everything entering a buyer's epoch utility.
///
///   conform:  Σ_k (w_k − v_k) + rtr + rsb − cstake + ω·rcb
///   late:     Σ_k (w_k − v_k + psi_k − plb_k) + rsb − cfin − cstake − ω·pcb
///   default:  Σ_k (w_k + psi_k) − stake − cstake − ω·credit_limit
///
/// where w = service value, v = payment, rtr = timeliness reward, rsb =
/// stake reward, cstake = stake carrying cost, cfin = financing cost of a
/// late cure, rcb/pcb = credit-limit growth/contraction and ω converts
/// credit capacity into utility units. A defaulting buyer forfeits the whole
/// stake and all credit capacity.
struct BuyerParams
{
  std::vector<Amount> service_values;  // w_k
  std::vector<Amount> payments;        // v_k
  std::vector<Amount> spoilages;       // per-tx drag on a deviating epoch
  std::vector<Amount> late_penalties;  // per-tx late penalty

  Amount timeliness_reward{};   // epoch reward for paying on time
  Amount stake_reward{};        // epoch reward on posted stake
  Amount stake_cost{};          // carrying cost of posted stake per epoch
  Amount financing_cost{};      // cost of financing a late cure
  Amount credit_reward{};       // credit-limit growth on a conforming epoch
  Amount credit_contraction{};  // credit-limit shrinkage on a late epoch
  Amount credit_limit{};        // current credit capacity
  Amount stake{};               // posted collateral (fully confiscated on default)

  Ratio  credit_weight{};          // ω: utility per unit of credit capacity
  Amount max_exposure{};           // largest admissible Σ v_k per epoch
  std::optional<Ratio> baseline;   // ū: per-epoch conforming utility; when
                                   // unset, u_conform is used
  int   punishment_epochs = 3;     // reward-suspension spell length
  Ratio discount{};                // δ
  Rate  opportunity_rate{};        // annual yield of capital outside the protocol
};

void validate(const MerchantParams &p);
void validate(const BuyerParams &p);

/// The three stage-utility rows, evaluated exactly (units).
struct StageUtilities
{
  Ratio conform;
  Ratio late;
  Ratio deviate_default;
};

StageUtilities merchant_utilities(const MerchantParams &p);
StageUtilities buyer_utilities(const BuyerParams &p);

/// Stage utility of a conforming agent whose protocol rewards are suspended
/// (the punishment-phase row): rewards vanish, trade continues.
Ratio merchant_punishment_utility(const MerchantParams &p);
Ratio buyer_punishment_utility(const BuyerParams &p);

/// One checked inequality: `holds` is margin > 0 for strict conditions and
/// margin ≥ 0 for weak ones; a zero margin on a strict condition is the
/// knife edge, reported in `note` as a boundary failure.
struct ConditionResult
{
  std::string name;
  bool        strict = true;
  bool        holds  = false;
  Ratio       margin;
  std::string note;
};

struct IncentiveReport
{
  StageUtilities               utilities;
  std::vector<ConditionResult> conditions;

  bool all_hold() const;
};

/// Merchant-side conditions, each with its exact margin:
///   late_penalty_dominance   min_k (plm_k − psi_k) > 0
///   bounded_liability        rsm + Σ pdm > cap + Σ(fee + plm − rfm)
///   conforming_order         u_conform > u_late > u_default
///   participation_ir         Σ rfm + rsm ≥ Σ(exec + fee) + cstake
IncentiveReport check_merchant_conditions(const MerchantParams &p);

/// Discounted loss of a T-epoch reward suspension with per-epoch floor ℓ̲:
/// both the closed form ((1−δ^T)/(1−δ))·ℓ̲ and the direct sum
/// Σ_{τ=1..T} δ^{τ−1}·ℓ̲ — equal when the per-epoch loss is constant.
struct SuspensionLoss
{
  Ratio bound;
  Ratio exact_sum;
};

/// Pre: 0 ≤ δ < 1 (throws std::domain_error otherwise), T ≥ 0.
SuspensionLoss suspension_loss(const Ratio &delta, int punishment_epochs,
                               Amount loss_floor);

/// True iff conforming is a best response for the merchant at EVERY discount
/// factor in [0,1): the stage ordering is δ-free and the continuation loss
/// is non-negative term by term, so the check is symbolic, not sampled.
bool verify_merchant_ppe(const MerchantParams &p);

/// Critical discount factor for buyer default deterrence:
///   δ̲ = (v_max − stake) / (v_max − stake + ū)
/// Degenerate corners get explicit flags instead of silent garbage.
struct ThresholdResult
{
  enum class Kind
  {
    Ok,                 // threshold in [0, 1)
    OverCollateralized, // stake ≥ v_max: deviation gain ≤ 0, threshold 0
    NoDeterrence,       // ū = 0 with v_max > stake: no δ < 1 deters default
  };

  Kind  kind = Kind::Ok;
  Ratio value;  // meaningful for Ok and OverCollateralized (0)
};

ThresholdResult delta_threshold(Amount max_exposure, Amount stake,
                                const Ratio &baseline);

/// Buyer-side conditions:
///   late_penalty_dominance   min_k (plb_k − psi_k) > 0
///   delta_threshold          δ ≥ δ̲ (weak)
///   conforming_order         u_conform > u_late
///   default_deterrence       δ·ū/(1−δ) ≥ v_max − stake (weak)
///   participation_ir         (Σv − stake)·r_opp·τ/8760 ≥ cfin (weak),
///                            τ = one epoch, margin kept as exact rational
IncentiveReport check_buyer_conditions(const BuyerParams &p);

/// True iff no one-shot deviation profits the buyer at the configured δ:
/// the late gain is wiped out by the penalty spread and the suspension loss,
/// and the worst-case default gain (v_max − stake) is dominated by the
/// discounted continuation value δ·ū/(1−δ).
bool verify_buyer_ppe(const BuyerParams &p);

}  // namespace epochpay::incentives
