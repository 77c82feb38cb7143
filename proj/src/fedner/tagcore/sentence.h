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

#ifndef FEDNER_TAGCORE_SENTENCE_H_
#define FEDNER_TAGCORE_SENTENCE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace fedner::tagcore {

// Label indices double as output-unit indices of the tagger.
enum class Tag : std::uint8_t { kB = 0, kI = 1, kO = 2 };
inline constexpr int kNumTags = 3;

constexpr int TagIndex(Tag t) { return static_cast<int>(t); }
char TagChar(Tag t);
std::optional<Tag> ParseTag(std::string_view s);

using TokenId = std::int32_t;

struct Sentence {
  std::vector<TokenId> tokens;
  std::vector<Tag> labels;

  std::size_t size() const { return tokens.size(); }
  bool operator==(const Sentence&) const = default;
};

// True iff no I directly follows an O and the sequence does not start with I.
bool IsWellFormedBio(std::span<const Tag> labels);

// Throws InputError if the sentence is empty, has mismatched lengths, or
// carries ill-formed BIO labels.
void ValidateSentence(const Sentence& sentence);

// Throws InputError if any token id is outside [0, vocab_size).
void ValidateTokens(std::span<const TokenId> tokens, int vocab_size);

}  // namespace fedner::tagcore

#endif  // FEDNER_TAGCORE_SENTENCE_H_
