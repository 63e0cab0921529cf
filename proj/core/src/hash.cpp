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

#include <openssl/evp.h>

#include <memory>
#include <stdexcept>

namespace epochpay {

namespace {

struct CtxDeleter
{
  void operator()(EVP_MD_CTX *ctx) const { EVP_MD_CTX_free(ctx); }
};

using CtxPtr = std::unique_ptr<EVP_MD_CTX, CtxDeleter>;

Digest32 finish(EVP_MD_CTX *ctx)
{
  Digest32     out{};
  unsigned int len = 0;
  if (EVP_DigestFinal_ex(ctx, out.data(), &len) != 1 || len != out.size())
  {
    throw std::runtime_error("sha256: digest finalisation failed");
  }
  return out;
}

}  // namespace

Digest32 sha256(std::span<const std::uint8_t> data)
{
  std::span<const std::uint8_t> parts[] = {data};
  return sha256_concat(parts);
}

Digest32 sha256_concat(std::span<const std::span<const std::uint8_t>> parts)
{
  CtxPtr ctx{EVP_MD_CTX_new()};
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
  {
    throw std::runtime_error("sha256: context initialisation failed");
  }
  for (auto const &part : parts)
  {
    if (!part.empty() &&
        EVP_DigestUpdate(ctx.get(), part.data(), part.size()) != 1)
    {
      throw std::runtime_error("sha256: update failed");
    }
  }
  return finish(ctx.get());
}

std::string to_hex(const Digest32 &digest)
{
  static constexpr char kAlphabet[] = "0123456789abcdef";
  std::string           out;
  out.reserve(digest.size() * 2);
  for (std::uint8_t byte : digest)
  {
    out.push_back(kAlphabet[byte >> 4]);
    out.push_back(kAlphabet[byte & 0x0F]);
  }
  return out;
}

namespace {

int hex_nibble(char c)
{
  if (c >= '0' && c <= '9')
  {
    return c - '0';
  }
  if (c >= 'a' && c <= 'f')
  {
    return c - 'a' + 10;
  }
  if (c >= 'A' && c <= 'F')
  {
    return c - 'A' + 10;
  }
  return -1;
}

}  // namespace

Digest32 digest_from_hex(const std::string &hex)
{
  if (hex.size() != 64)
  {
    throw std::invalid_argument("digest_from_hex: expected 64 hex characters");
  }
  Digest32 out{};
  for (std::size_t i = 0; i < out.size(); ++i)
  {
    int hi = hex_nibble(hex[2 * i]);
    int lo = hex_nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0)
    {
      throw std::invalid_argument("digest_from_hex: invalid hex character");
    }
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

}  // namespace epochpay
