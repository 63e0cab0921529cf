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

#include "epochpay/costmodel.hpp"
#include "epochpay/incentives.hpp"
#include "epochpay/sim.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace epochpay::io {

inline constexpr int kSchemaVersion = 1;

/// Malformed input with the JSON path where parsing gave up, e.g.
/// "pairs[0].buyer.payments[2]: expected an amount".
class ParseError : public std::runtime_error
{
public:
  ParseError(const std::string &path, const std::string &message)
    : std::runtime_error(path.empty() ? message : path + ": " + message)
    , path_{path}
  {}

  const std::string &path() const { return path_; }

private:
  std::string path_;
};

/// Parses a scenario document. Amounts are exact decimal strings ("12.5")
/// or JSON integers; ratios are "num/den", exact decimal strings, or
/// integers; rates are JSON integers in ppm. Throws ParseError with the
/// offending path on any malformed, missing, or unknown field.
sim::ScenarioConfig parse_scenario(const std::string &json_text);

/// Inverse of parse_scenario (canonical field order, 2-space indent).
std::string scenario_to_json(const sim::ScenarioConfig &config);

/// A condition-check request: exactly one parameter set, plus the
/// repeated-game knobs the conditions need (defaults: T = 3, δ = 0).
struct CheckRequest
{
  std::optional<incentives::MerchantParams> merchant;
  std::optional<incentives::BuyerParams>    buyer;
};

CheckRequest parse_check_request(const std::string &json_text);

std::string report_to_json(const incentives::IncentiveReport &report);

std::string trace_to_json(const sim::EpochTrace &trace);

/// Flat table of the trace, one row per epoch per agent:
///   epoch,agent,role,participated,action,stage_utility,wealth_delta,
///   phase,trust,alive
/// Exact fields are rendered exactly (rationals as "num/den", amounts as
/// decimal unit strings).
std::string trace_to_csv(const sim::EpochTrace &trace);

std::string gains_to_json(const std::vector<sim::DeviationGain> &gains);

std::string sweep_to_json(const sim::SweepResult &result);

std::string costmodel_to_json(const CostModelReport &report);

/// "98.19"-style rendering of a fraction as a percentage with two decimal
/// places, rounded half-to-even; display only.
std::string percent_2dp(const Ratio &fraction);

}  // namespace epochpay::io
