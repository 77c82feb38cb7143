//
// Copyright 2026 The FedNER Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "fedner/common/digest.h"

#include <openssl/evp.h>

#include <bit>
#include <cstring>
#include <memory>
#include <vector>

#include "fedner/common/error.h"

namespace fedner {
namespace {

struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};
using MdCtx = std::unique_ptr<EVP_MD_CTX, MdCtxDeleter>;

MdCtx NewSha256Context() {
  MdCtx ctx(EVP_MD_CTX_new());
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw NumericError("failed to initialise SHA-256 context");
  }
  return ctx;
}

Sha256 Finish(EVP_MD_CTX* ctx) {
  Sha256 out{};
  unsigned int len = 0;
  if (EVP_DigestFinal_ex(ctx, out.data(), &len) != 1 || len != out.size()) {
    throw NumericError("failed to finalise SHA-256 digest");
  }
  return out;
}

}  // namespace

Sha256 Sha256Bytes(std::span<const std::uint8_t> bytes) {
  MdCtx ctx = NewSha256Context();
  EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size());
  return Finish(ctx.get());
}

Sha256 Sha256Doubles(std::string_view tag, std::span<const double> values) {
  static_assert(std::endian::native == std::endian::little ||
                    std::endian::native == std::endian::big,
                "mixed-endian platforms are not supported");
  MdCtx ctx = NewSha256Context();
  EVP_DigestUpdate(ctx.get(), tag.data(), tag.size());
  const std::uint8_t sep = 0;
  EVP_DigestUpdate(ctx.get(), &sep, 1);
  if constexpr (std::endian::native == std::endian::little) {
    EVP_DigestUpdate(ctx.get(), values.data(), values.size_bytes());
  } else {
    std::vector<std::uint8_t> buf(values.size() * 8);
    for (std::size_t i = 0; i < values.size(); ++i) {
      const auto bits = std::bit_cast<std::uint64_t>(values[i]);
      for (int b = 0; b < 8; ++b) buf[i * 8 + b] = (bits >> (8 * b)) & 0xff;
    }
    EVP_DigestUpdate(ctx.get(), buf.data(), buf.size());
  }
  return Finish(ctx.get());
}

std::string ToHex(const Sha256& digest) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(digest.size() * 2);
  for (std::uint8_t b : digest) {
    out.push_back(kHex[b >> 4]);
    out.push_back(kHex[b & 0xf]);
  }
  return out;
}

}  // namespace fedner
