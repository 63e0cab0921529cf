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

#include <compare>
#include <cstdint>

namespace epochpay {

/// Model time is an integer number of hours since scenario start. Nothing in
/// the protocol needs finer resolution: epochs are hours long and financing
/// costs accrue per hour.
struct Hours
{
  std::int64_t count = 0;

  friend constexpr auto operator<=>(Hours, Hours) = default;
  friend constexpr Hours operator+(Hours a, Hours b)
  {
    return Hours{a.count + b.count};
  }
  friend constexpr Hours operator-(Hours a, Hours b)
  {
    return Hours{a.count - b.count};
  }
};

inline constexpr std::int64_t kEpochHours    = 4;
inline constexpr std::int64_t kHoursPerYear  = 365 * 24;  // 8760

/// Settlement epochs are numbered from zero; epoch e spans model hours
/// [4e, 4e + 4).
struct EpochIndex
{
  std::uint64_t index = 0;

  friend constexpr auto operator<=>(EpochIndex, EpochIndex) = default;
};

constexpr Hours epoch_start(EpochIndex e)
{
  return Hours{static_cast<std::int64_t>(e.index) * kEpochHours};
}

constexpr Hours epoch_end(EpochIndex e)
{
  return Hours{(static_cast<std::int64_t>(e.index) + 1) * kEpochHours};
}

/// Payment for epoch e falls due at the epoch boundary; a late payer may
/// still cure within the grace interval that follows.
struct SettlementDeadline
{
  Hours due;
  Hours cure_end;
};

constexpr SettlementDeadline settlement_deadline(EpochIndex e, Hours cure)
{
  Hours due = epoch_end(e);
  return SettlementDeadline{due, due + cure};
}

}  // namespace epochpay
