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

#include "fedner/corpus/conll.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "fedner/common/error.h"

namespace fedner::corpus {

std::vector<TextSentence> ParseConll(std::istream& in) {
  std::vector<TextSentence> out;
  TextSentence current;
  std::size_t current_start = 0;
  std::string line;
  std::size_t line_no = 0;

  const auto flush = [&]() {
    if (current.tokens.empty()) return;
    if (!tagcore::IsWellFormedBio(current.labels)) {
      throw ParseError("ill-formed BIO sequence in sentence starting at line " +
                           std::to_string(current_start),
                       current_start);
    }
    out.push_back(std::move(current));
    current = {};
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw ParseError("line " + std::to_string(line_no) +
                           ": expected exactly two tab-separated columns",
                       line_no);
    }
    std::string token = line.substr(0, tab);
    const std::string label = line.substr(tab + 1);
    if (token.empty()) {
      throw ParseError("line " + std::to_string(line_no) + ": empty token",
                       line_no);
    }
    const auto tag = tagcore::ParseTag(label);
    if (!tag) {
      throw ParseError("line " + std::to_string(line_no) + ": unknown label '" +
                           label + "'",
                       line_no);
    }
    if (current.tokens.empty()) current_start = line_no;
    current.tokens.push_back(std::move(token));
    current.labels.push_back(*tag);
  }
  flush();
  return out;
}

std::vector<TextSentence> ReadConll(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return ParseConll(in);
}

void FormatConll(const std::vector<TextSentence>& sentences, std::ostream& out) {
  for (const TextSentence& s : sentences) {
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      out << s.tokens[i] << '\t' << tagcore::TagChar(s.labels[i]) << '\n';
    }
    out << '\n';
  }
}

void WriteConll(const std::vector<TextSentence>& sentences,
                const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  FormatConll(sentences, out);
  if (!out) throw IoError("write failed for " + path.string());
}

tagcore::Sentence Encode(const TextSentence& sentence,
                         const tagcore::Vocabulary& vocab) {
  tagcore::Sentence out;
  out.labels = sentence.labels;
  out.tokens.reserve(sentence.tokens.size());
  for (const std::string& t : sentence.tokens) out.tokens.push_back(vocab.Lookup(t));
  return out;
}

TextSentence Decode(const tagcore::Sentence& sentence,
                    const tagcore::Vocabulary& vocab) {
  TextSentence out;
  out.labels = sentence.labels;
  out.tokens.reserve(sentence.tokens.size());
  for (tagcore::TokenId id : sentence.tokens) out.tokens.push_back(vocab.Word(id));
  return out;
}

}  // namespace fedner::corpus
