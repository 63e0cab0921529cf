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

#include "epochpay/ledger.hpp"
#include "epochpay/leaf.hpp"
#include "epochpay/merkle.hpp"

#include <cstddef>
#include <variant>
#include <vector>

namespace epochpay {

/// The aggregator batches leaves off-chain and commits roots; it is
/// untrusted, so the model can drive it with misbehaviours and check that
/// each one is either harmless or detectable:
///
///   Honest     — commit the true root for the staged batch.
///   OmitLeaf   — drop one staged leaf before committing.
///   StaleRoot  — try to (re)commit the oldest epoch instead of the next.
///   Equivocate — try to commit two different roots for the same epoch.
struct Honest
{};

struct OmitLeaf
{
  std::size_t index = 0;
};

struct StaleRoot
{};

struct Equivocate
{};

using AggregatorBehavior = std::variant<Honest, OmitLeaf, StaleRoot, Equivocate>;

/// Whether a staged leaf can still be proven against whatever digest the
/// ledger ended up holding for the epoch.
struct ProofCheck
{
  std::size_t leaf_index     = 0;
  bool        proof_available = false;  // aggregator can produce a path
  bool        verified        = false;  // that path verifies on-chain
};

struct SubmitAttempt
{
  EpochIndex   epoch{};
  RootKind     kind = RootKind::TxRoot;
  Digest32     digest{};
  SubmitResult result;
};

/// Observable consequences of one aggregator step, with enough detail for a
/// test (or a suspicious client) to classify the behaviour.
struct EffectReport
{
  std::vector<SubmitAttempt> submissions;
  std::vector<ProofCheck>    proof_checks;   // one per originally staged leaf
  std::size_t                entries_before = 0;
  std::size_t                entries_after  = 0;
};

class Aggregator
{
public:
  explicit Aggregator(RootLedger &ledger) : ledger_{&ledger} {}

  /// Stages the batch the aggregator is supposed to commit for `epoch`.
  void stage_batch(EpochIndex epoch, RootKind kind,
                   std::vector<LeafRecord> leaves);

  /// Executes one behaviour against the ledger at time `now` and reports
  /// what happened. Proof checks always refer to the originally staged
  /// leaves, so an omission shows up as an unprovable leaf.
  EffectReport step(const AggregatorBehavior &behavior, Hours now);

private:
  RootLedger             *ledger_;
  EpochIndex              epoch_{};
  RootKind                kind_ = RootKind::TxRoot;
  std::vector<LeafRecord> staged_;
};

}  // namespace epochpay
