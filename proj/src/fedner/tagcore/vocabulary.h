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

#ifndef FEDNER_TAGCORE_VOCABULARY_H_
#define FEDNER_TAGCORE_VOCABULARY_H_

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fedner/tagcore/sentence.h"

namespace fedner::tagcore {

inline constexpr TokenId kPadId = 0;
inline constexpr TokenId kUnkId = 1;

// Closed word list. Ids 0 and 1 are reserved for padding and unknown words;
// corpus words follow in insertion order.
class Vocabulary {
 public:
  Vocabulary();

  TokenId Add(std::string_view word);
  // Returns kUnkId for words not in the vocabulary.
  TokenId Lookup(std::string_view word) const;
  const std::string& Word(TokenId id) const;
  int size() const { return static_cast<int>(words_.size()); }
  const std::vector<std::string>& words() const { return words_; }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, TokenId> index_;
};

}  // namespace fedner::tagcore

#endif  // FEDNER_TAGCORE_VOCABULARY_H_
