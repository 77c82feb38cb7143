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

#include "fedner/tagcore/sentence.h"

#include <string>

#include "fedner/common/error.h"

namespace fedner::tagcore {

char TagChar(Tag t) {
  switch (t) {
    case Tag::kB:
      return 'B';
    case Tag::kI:
      return 'I';
    case Tag::kO:
      return 'O';
  }
  return '?';
}

std::optional<Tag> ParseTag(std::string_view s) {
  if (s == "B") return Tag::kB;
  if (s == "I") return Tag::kI;
  if (s == "O") return Tag::kO;
  return std::nullopt;
}

bool IsWellFormedBio(std::span<const Tag> labels) {
  Tag prev = Tag::kO;
  for (Tag t : labels) {
    if (t == Tag::kI && prev == Tag::kO) return false;
    prev = t;
  }
  return true;
}

void ValidateSentence(const Sentence& sentence) {
  if (sentence.tokens.empty()) throw InputError("empty sentence");
  if (sentence.tokens.size() != sentence.labels.size()) {
    throw InputError("sentence has " + std::to_string(sentence.tokens.size()) +
                     " tokens but " + std::to_string(sentence.labels.size()) +
                     " labels");
  }
  if (!IsWellFormedBio(sentence.labels)) {
    throw InputError("malformed BIO labels: I follows O or starts sentence");
  }
}

void ValidateTokens(std::span<const TokenId> tokens, int vocab_size) {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] < 0 || tokens[i] >= vocab_size) {
      throw InputError("token index " + std::to_string(tokens[i]) +
                       " at position " + std::to_string(i) +
                       " out of range for vocabulary of size " +
                       std::to_string(vocab_size));
    }
  }
}

}  // namespace fedner::tagcore
