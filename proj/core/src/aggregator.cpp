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

#include "epochpay/aggregator.hpp"

#include <optional>
#include <stdexcept>

namespace epochpay {

namespace {

Digest32 root_of(const std::vector<LeafRecord> &leaves)
{
  if (leaves.empty())
  {
    return MerkleTree::empty_root();
  }
  return MerkleTree::build(leaves).root();
}

}  // namespace

void Aggregator::stage_batch(EpochIndex epoch, RootKind kind,
                             std::vector<LeafRecord> leaves)
{
  epoch_  = epoch;
  kind_   = kind;
  staged_ = std::move(leaves);
}

EffectReport Aggregator::step(const AggregatorBehavior &behavior, Hours now)
{
  EffectReport report;
  report.entries_before = ledger_->entries().size();

  auto submit = [&](EpochIndex epoch, const Digest32 &digest) {
    SubmitAttempt attempt;
    attempt.epoch  = epoch;
    attempt.kind   = kind_;
    attempt.digest = digest;
    attempt.result = ledger_->submit(epoch, kind_, digest, now);
    report.submissions.push_back(attempt);
  };

  // What the aggregator actually publishes, and which staged leaves survive
  // into the committed tree.
  std::vector<LeafRecord> published = staged_;

  if (std::holds_alternative<Honest>(behavior))
  {
    submit(epoch_, root_of(published));
  }
  else if (auto const *omit = std::get_if<OmitLeaf>(&behavior))
  {
    if (omit->index >= published.size())
    {
      throw std::out_of_range("Aggregator: omitted leaf index out of range");
    }
    published.erase(published.begin() + static_cast<std::ptrdiff_t>(omit->index));
    submit(epoch_, root_of(published));
  }
  else if (std::holds_alternative<StaleRoot>(behavior))
  {
    // Reference the oldest epoch rather than the staged one. The staged
    // batch's own root keeps the payload realistic; the ledger must refuse
    // regardless of payload.
    submit(EpochIndex{0}, root_of(published));
    published.clear();  // nothing was accepted for the staged epoch
  }
  else if (std::holds_alternative<Equivocate>(behavior))
  {
    Digest32 first = root_of(published);
    // A second, conflicting root for the very same epoch: drop the last leaf
    // (or swap to the sentinel when only one exists).
    std::vector<LeafRecord> conflicting = published;
    if (!conflicting.empty())
    {
      conflicting.pop_back();
    }
    Digest32 second = root_of(conflicting);
    submit(epoch_, first);
    submit(epoch_, second);
  }

  // Replay proofs for every originally staged leaf against whatever the
  // ledger now holds for the epoch.
  std::optional<Digest32> committed = ledger_->committed(epoch_, kind_);
  std::optional<MerkleTree> tree;
  if (!published.empty())
  {
    tree = MerkleTree::build(published);
  }
  for (std::size_t i = 0; i < staged_.size(); ++i)
  {
    ProofCheck check;
    check.leaf_index = i;
    if (committed && tree)
    {
      // Locate the staged leaf in the published batch (omission removes it).
      std::size_t published_index = published.size();
      for (std::size_t j = 0; j < published.size(); ++j)
      {
        if (published[j].bytes == staged_[i].bytes)
        {
          published_index = j;
          break;
        }
      }
      if (published_index < published.size())
      {
        check.proof_available = true;
        check.verified        = verify_inclusion(
            *committed, staged_[i], tree->prove(published_index));
      }
    }
    report.proof_checks.push_back(check);
  }

  report.entries_after = ledger_->entries().size();
  return report;
}

}  // namespace epochpay
