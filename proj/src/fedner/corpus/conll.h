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

#ifndef FEDNER_CORPUS_CONLL_H_
#define FEDNER_CORPUS_CONLL_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fedner/tagcore/sentence.h"
#include "fedner/tagcore/vocabulary.h"

namespace fedner::corpus {

// A labelled sentence in surface form.
struct TextSentence {
  std::vector<std::string> tokens;
  std::vector<tagcore::Tag> labels;

  bool operator==(const TextSentence&) const = default;
};

// Two tab-separated columns per line (token, label in {B, I, O}), one blank
// line after every sentence. A trailing '\r' is tolerated on input. Throws
// ParseError carrying the 1-based line number on malformed lines, unknown
// labels or ill-formed BIO sequences.
std::vector<TextSentence> ParseConll(std::istream& in);
std::vector<TextSentence> ReadConll(const std::filesystem::path& path);

void FormatConll(const std::vector<TextSentence>& sentences, std::ostream& out);
void WriteConll(const std::vector<TextSentence>& sentences,
                const std::filesystem::path& path);

tagcore::Sentence Encode(const TextSentence& sentence,
                         const tagcore::Vocabulary& vocab);
TextSentence Decode(const tagcore::Sentence& sentence,
                    const tagcore::Vocabulary& vocab);

}  // namespace fedner::corpus

#endif  // FEDNER_CORPUS_CONLL_H_
