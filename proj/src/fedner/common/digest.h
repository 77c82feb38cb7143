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

#ifndef FEDNER_COMMON_DIGEST_H_
#define FEDNER_COMMON_DIGEST_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace fedner {

using Sha256 = std::array<std::uint8_t, 32>;

// SHA-256 over raw bytes.
Sha256 Sha256Bytes(std::span<const std::uint8_t> bytes);

// SHA-256 over a tag string followed by the little-endian IEEE-754 encoding
// of `values`. The tag binds the digest to a parameter layout.
Sha256 Sha256Doubles(std::string_view tag, std::span<const double> values);

std::string ToHex(const Sha256& digest);

}  // namespace fedner

#endif  // FEDNER_COMMON_DIGEST_H_
