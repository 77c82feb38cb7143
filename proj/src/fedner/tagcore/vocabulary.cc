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

#include "fedner/tagcore/vocabulary.h"

#include "fedner/common/error.h"

namespace fedner::tagcore {

Vocabulary::Vocabulary() : words_{"<pad>", "<unk>"} {
  index_.emplace(words_[0], kPadId);
  index_.emplace(words_[1], kUnkId);
}

TokenId Vocabulary::Add(std::string_view word) {
  auto it = index_.find(std::string(word));
  if (it != index_.end()) return it->second;
  const auto id = static_cast<TokenId>(words_.size());
  words_.emplace_back(word);
  index_.emplace(words_.back(), id);
  return id;
}

TokenId Vocabulary::Lookup(std::string_view word) const {
  auto it = index_.find(std::string(word));
  return it == index_.end() ? kUnkId : it->second;
}

const std::string& Vocabulary::Word(TokenId id) const {
  if (id < 0 || id >= size()) {
    throw InputError("token id " + std::to_string(id) + " not in vocabulary");
  }
  return words_[static_cast<std::size_t>(id)];
}

}  // namespace fedner::tagcore
