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

#include "epochpay/ratio.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace epochpay {

/// Off-chain data footprint for one epoch batch: every transaction costs one
/// fixed-size leaf, so the footprint is exactly linear in the batch size.
struct OffchainRow
{
  std::size_t batch       = 0;
  std::size_t leaf_bytes  = 0;  // bytes per transaction leaf
  std::size_t total_bytes = 0;  // batch × leaf_bytes
};

/// Externally reported on-chain gas figures for the two settlement designs
/// (per-transaction vs epoch-batched), kept as fixed reference data for
/// comparison; this model does not measure gas.
struct GasReference
{
  std::size_t   batch              = 0;
  std::uint64_t per_tx_total       = 0;  // settle every tx individually
  std::uint64_t batched_total      = 0;  // settle the epoch against two roots
  std::uint64_t tx_root_submit     = 0;  // one transaction-root commitment
  std::uint64_t credit_root_submit = 0;  // one credit-root commitment
  Ratio         savings;                 // exact 1 − batched/per-tx
};

struct CostModelReport
{
  // Each epoch the aggregator posts exactly two constant-size commitment
  // messages (one transaction root, one credit root), independent of the
  // number of transactions in the batch.
  std::size_t onchain_messages_per_epoch = 0;
  std::size_t onchain_bytes_per_message  = 0;
  std::size_t onchain_bytes_per_epoch    = 0;

  std::vector<OffchainRow>  offchain;       // one row per requested batch size
  std::vector<GasReference> gas_reference;  // fixed table, see note
  std::string               gas_reference_note;
};

/// Exact savings fraction 1 − batched/per-tx.
Ratio savings_fraction(std::uint64_t per_tx_total, std::uint64_t batched_total);

/// Builds the cost report: constant on-chain footprint, linear off-chain
/// rows for the requested batch sizes, and the fixed gas reference table.
/// A zero batch is a quiet epoch — the commitment messages (carrying the
/// sentinel root) still cost the same constant bytes; its off-chain row is
/// zero.
CostModelReport cost_model(std::span<const std::size_t> batch_sizes);

}  // namespace epochpay
