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

#include <compare>
#include <cstdint>
#include <string>

namespace epochpay {

/// 32-byte opaque identifier (agent or transaction). Ordering is bytewise
/// lexicographic, which is also the auction tie-break order.
using Id32 = Digest32;

/// Derives a stable identifier from a human-readable name.
Id32 id_from_name(const std::string &name);

enum class Role : std::uint8_t
{
  Buyer     = 1,
  Merchant  = 2,
  Guarantor = 3,
};

std::string to_string(Role role);

struct AgentId
{
  Id32 id{};
  Role role = Role::Buyer;

  friend auto operator<=>(const AgentId &, const AgentId &) = default;
};

}  // namespace epochpay
