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

#include <array>
#include <cstdint>
#include <span>
#include <string>

namespace epochpay {

using Digest32 = std::array<std::uint8_t, 32>;

/// SHA-256 of a single contiguous buffer.
Digest32 sha256(std::span<const std::uint8_t> data);

/// SHA-256 over the concatenation of several buffers, without copying them
/// into one allocation first.
Digest32 sha256_concat(std::span<const std::span<const std::uint8_t>> parts);

std::string to_hex(const Digest32 &digest);

/// Parses a 64-character lowercase/uppercase hex string. Throws
/// std::invalid_argument on malformed input.
Digest32 digest_from_hex(const std::string &hex);

}  // namespace epochpay
