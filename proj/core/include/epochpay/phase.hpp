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
#include <stdexcept>
#include <string>

namespace epochpay {

struct PhaseConfig
{
  /// Epochs of reward suspension after a deviation (T).
  int punishment_epochs = 3;
  /// Conforming epochs needed to climb from fresh recovery back to Normal.
  int recovery_levels = 3;
};

/// Trust phase of an agent under the public punishment scheme:
///
///   Normal --deviate--> Punishment(T) --conform x T--> Recovery(0)
///   Recovery(k) --conform--> Recovery(k+1) ... --> Normal
///   Punishment/Recovery --deviate--> Punishment(T)   (timer restarts)
///
/// Rewards are withheld while in Punishment; Recovery pays rewards again but
/// remembers that one more slip restarts the clock.
class PenaltyPhase
{
public:
  enum class Kind
  {
    Normal,
    Punishment,
    Recovery,
  };

  constexpr PenaltyPhase() = default;

  static constexpr PenaltyPhase normal() { return PenaltyPhase{}; }

  static PenaltyPhase punishment(int remaining)
  {
    if (remaining <= 0)
    {
      throw std::invalid_argument("PenaltyPhase: punishment needs remaining > 0");
    }
    PenaltyPhase p;
    p.kind_  = Kind::Punishment;
    p.count_ = remaining;
    return p;
  }

  static PenaltyPhase recovery(int level)
  {
    if (level < 0)
    {
      throw std::invalid_argument("PenaltyPhase: negative recovery level");
    }
    PenaltyPhase p;
    p.kind_  = Kind::Recovery;
    p.count_ = level;
    return p;
  }

  constexpr Kind kind() const { return kind_; }

  /// Punishment epochs still to serve (Punishment only).
  int remaining() const { return kind_ == Kind::Punishment ? count_ : 0; }

  /// Conforming epochs accumulated since punishment ended (Recovery only).
  int level() const { return kind_ == Kind::Recovery ? count_ : 0; }

  bool rewards_suspended() const { return kind_ == Kind::Punishment; }

  friend constexpr bool operator==(PenaltyPhase, PenaltyPhase) = default;

  std::string to_string() const;

private:
  Kind kind_  = Kind::Normal;
  int  count_ = 0;
};

/// Advances the phase by one settled epoch.
inline PenaltyPhase step_phase(PenaltyPhase phase, bool conformed,
                               const PhaseConfig &config)
{
  if (!conformed)
  {
    // Any deviation (re)starts a full punishment spell, from any phase.
    return PenaltyPhase::punishment(config.punishment_epochs);
  }
  switch (phase.kind())
  {
  case PenaltyPhase::Kind::Normal:
    return PenaltyPhase::normal();
  case PenaltyPhase::Kind::Punishment:
    if (phase.remaining() > 1)
    {
      return PenaltyPhase::punishment(phase.remaining() - 1);
    }
    return PenaltyPhase::recovery(0);
  case PenaltyPhase::Kind::Recovery:
    if (phase.level() + 1 >= config.recovery_levels)
    {
      return PenaltyPhase::normal();
    }
    return PenaltyPhase::recovery(phase.level() + 1);
  }
  return PenaltyPhase::normal();
}

inline std::string PenaltyPhase::to_string() const
{
  switch (kind_)
  {
  case Kind::Normal:
    return "normal";
  case Kind::Punishment:
    return "punishment(" + std::to_string(count_) + ")";
  case Kind::Recovery:
    return "recovery(" + std::to_string(count_) + ")";
  }
  return "unknown";
}

}  // namespace epochpay
