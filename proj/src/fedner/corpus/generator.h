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

#ifndef FEDNER_CORPUS_GENERATOR_H_
#define FEDNER_CORPUS_GENERATOR_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fedner/corpus/conll.h"
#include "fedner/corpus/split.h"
#include "fedner/tagcore/vocabulary.h"

namespace fedner::corpus {

struct SiloProfile {
  std::string id;
  // Unscaled sentence count; the generated silo holds round(base * scale).
  double base_sentences = 0.0;
  int vaccine_names = 6;
  // Zipf exponent of this silo's adverse-event frequencies. Drawn from
  // [skew_min, skew_max] when absent.
  std::optional<double> skew_exponent;
};

// Shape of the synthetic multi-silo corpus. The default is a long-tailed
// ten-silo ladder (42207 down to 161 unscaled sentences) at scale 0.1.
struct CorpusSpec {
  std::uint64_t seed = 20210301;
  double scale = 0.1;
  std::vector<SiloProfile> silos;
  int adverse_events = 1000;  // shared lexicon of adverse-event phrases
  int modifiers = 40;         // words that may open a multi-token phrase
  int distractor_terms = 500;
  int filler_words = 200;
  double entities_per_sentence = 39139.0 / 87730.0;
  // Probability that an ambiguous term slot holds an adverse event.
  double term_entity_probability = 0.5;
  double skew_min = 0.6;
  double skew_max = 1.0;
  SplitRatios split_ratios = kDefaultSplitRatios;

  static CorpusSpec Default();

  // round(base_sentences * scale) per silo, in profile order.
  std::vector<std::size_t> SiloSizes() const;

  // Throws ConfigError on an infeasible spec.
  void Validate() const;
};

// Generated silos smaller than this are rejected: it is the smallest size
// for which all four splits stay non-empty with margin under the default
// ratios.
inline constexpr std::size_t kMinimumSiloSentences = 10;

struct SiloInfo {
  std::string id;
  double skew_exponent = 1.0;
  std::vector<std::string> vaccine_names;
  // Probability of each shared adverse-event phrase (lexicon order).
  std::vector<double> adverse_event_distribution;
};

struct Corpus {
  tagcore::Vocabulary vocab;
  std::vector<SiloDataset> silos;
  std::vector<SiloInfo> info;
  // Shared adverse-event phrases, 1-4 tokens each.
  std::vector<std::vector<std::string>> adverse_events;

  const SiloDataset& Silo(const std::string& id) const;
};

// Deterministic for a fixed spec. Throws ConfigError for infeasible specs.
Corpus Generate(const CorpusSpec& spec);

// Surface-form sentences of one silo before splitting. Depends only on the
// spec's lexicon parameters, the seed and the profile itself, so identical
// profiles yield identical sentences.
std::vector<TextSentence> GenerateSiloSentences(const CorpusSpec& spec,
                                                const SiloProfile& profile);

// Writes <silo_id>.<split>.conll for every silo and split.
void WriteCorpus(const Corpus& corpus, const std::filesystem::path& dir);

// Number of maximal B I* runs.
std::size_t CountEntities(const std::vector<tagcore::Tag>& labels);

}  // namespace fedner::corpus

#endif  // FEDNER_CORPUS_GENERATOR_H_
