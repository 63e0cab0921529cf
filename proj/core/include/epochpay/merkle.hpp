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

#include "epochpay/hash.hpp"
#include "epochpay/leaf.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace epochpay {

/// Membership proof for one leaf: the sibling digests from the leaf's level
/// up to (but excluding) the root, plus enough shape information
/// (index + total leaf count) for the verifier to replay promotions exactly.
struct InclusionProof
{
  std::size_t           leaf_index = 0;
  std::size_t           leaf_count = 0;
  std::vector<Digest32> siblings;
};

/// Binary SHA-256 Merkle tree with domain separation:
///
///   leaf hash     H(0x00 ‖ leaf bytes)
///   internal hash H(0x01 ‖ left ‖ right)
///
/// An odd node at the end of a level is promoted to the next level unchanged
/// (never paired with a copy of itself), so no two distinct leaf multisets
/// can collide through duplication.
class MerkleTree
{
public:
  /// Builds a tree over the leaves in order. Throws std::invalid_argument on
  /// an empty span — an empty epoch commits `empty_root()` instead.
  static MerkleTree build(std::span<const LeafRecord> leaves);

  /// Sentinel root for an epoch with no activity: H(0x00) — the leaf-domain
  /// hash of zero bytes, which no non-empty tree can produce.
  static Digest32 empty_root();

  static Digest32 hash_leaf(const LeafRecord &leaf);

  static Digest32 hash_internal(const Digest32 &left, const Digest32 &right);

  const Digest32 &root() const { return levels_.back().front(); }

  std::size_t leaf_count() const { return levels_.front().size(); }

  /// Proof for the leaf at `index`; throws std::out_of_range past the end.
  InclusionProof prove(std::size_t index) const;

private:
  MerkleTree() = default;

  // levels_[0] holds leaf hashes; each further level halves (rounding up via
  // promotion) until a single root remains.
  std::vector<std::vector<Digest32>> levels_;
};

/// Replays a proof against a claimed root. Returns false — never throws —
/// on any mismatch, wrong-length path, or out-of-range index, so adversarial
/// proofs are data, not errors.
bool verify_inclusion(const Digest32 &root, const LeafRecord &leaf,
                      const InclusionProof &proof);

}  // namespace epochpay
