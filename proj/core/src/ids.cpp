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

#include "epochpay/ids.hpp"

namespace epochpay {

Id32 id_from_name(const std::string &name)
{
  return sha256(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t *>(name.data()), name.size()));
}

std::string to_string(Role role)
{
  switch (role)
  {
  case Role::Buyer:
    return "buyer";
  case Role::Merchant:
    return "merchant";
  case Role::Guarantor:
    return "guarantor";
  }
  return "unknown";
}

}  // namespace epochpay
