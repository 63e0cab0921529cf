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

#include "epochpay/merkle.hpp"

#include <stdexcept>

namespace epochpay {

namespace {

constexpr std::uint8_t kLeafDomain[]     = {0x00};
constexpr std::uint8_t kInternalDomain[] = {0x01};

}  // namespace

Digest32 MerkleTree::hash_leaf(const LeafRecord &leaf)
{
  std::span<const std::uint8_t> parts[] = {
      std::span<const std::uint8_t>(kLeafDomain),
      std::span<const std::uint8_t>(leaf.bytes),
  };
  return sha256_concat(parts);
}

Digest32 MerkleTree::hash_internal(const Digest32 &left, const Digest32 &right)
{
  std::span<const std::uint8_t> parts[] = {
      std::span<const std::uint8_t>(kInternalDomain),
      std::span<const std::uint8_t>(left),
      std::span<const std::uint8_t>(right),
  };
  return sha256_concat(parts);
}

Digest32 MerkleTree::empty_root()
{
  // Leaf-domain hash of an empty payload. Every real leaf record is at
  // least 50 bytes, so no populated tree can reproduce this digest.
  return sha256(std::span<const std::uint8_t>(kLeafDomain));
}

MerkleTree MerkleTree::build(std::span<const LeafRecord> leaves)
{
  if (leaves.empty())
  {
    throw std::invalid_argument(
        "MerkleTree::build: empty batch — commit empty_root() instead");
  }
  MerkleTree tree;
  auto      &levels = tree.levels_;
  levels.emplace_back();
  levels.front().reserve(leaves.size());
  for (auto const &leaf : leaves)
  {
    levels.front().push_back(hash_leaf(leaf));
  }
  while (levels.back().size() > 1)
  {
    auto const &below = levels.back();
    std::vector<Digest32> above;
    above.reserve((below.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < below.size(); i += 2)
    {
      above.push_back(hash_internal(below[i], below[i + 1]));
    }
    if (below.size() % 2 == 1)
    {
      // Odd tail node: promote as-is rather than hashing it with a copy of
      // itself.
      above.push_back(below.back());
    }
    levels.push_back(std::move(above));
  }
  return tree;
}

InclusionProof MerkleTree::prove(std::size_t index) const
{
  if (index >= leaf_count())
  {
    throw std::out_of_range("MerkleTree::prove: leaf index out of range");
  }
  InclusionProof proof;
  proof.leaf_index = index;
  proof.leaf_count = leaf_count();
  std::size_t i = index;
  for (std::size_t level = 0; level + 1 < levels_.size(); ++level)
  {
    auto const &nodes = levels_[level];
    bool promoted = (nodes.size() % 2 == 1) && (i == nodes.size() - 1);
    if (!promoted)
    {
      std::size_t sibling = (i % 2 == 0) ? i + 1 : i - 1;
      proof.siblings.push_back(nodes[sibling]);
    }
    i /= 2;
  }
  return proof;
}

bool verify_inclusion(const Digest32 &root, const LeafRecord &leaf,
                      const InclusionProof &proof)
{
  if (proof.leaf_count == 0 || proof.leaf_index >= proof.leaf_count)
  {
    return false;
  }
  Digest32    node = MerkleTree::hash_leaf(leaf);
  std::size_t i    = proof.leaf_index;
  std::size_t n    = proof.leaf_count;
  auto        it   = proof.siblings.begin();
  while (n > 1)
  {
    bool promoted = (n % 2 == 1) && (i == n - 1);
    if (!promoted)
    {
      if (it == proof.siblings.end())
      {
        return false;
      }
      node = (i % 2 == 0) ? MerkleTree::hash_internal(node, *it)
                          : MerkleTree::hash_internal(*it, node);
      ++it;
    }
    i /= 2;
    n = (n + 1) / 2;
  }
  return it == proof.siblings.end() && node == root;
}

}  // namespace epochpay
