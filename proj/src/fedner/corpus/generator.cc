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

#include "fedner/corpus/generator.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <string_view>

#include "fedner/common/error.h"
#include "fedner/common/rng.h"

namespace fedner::corpus {
namespace {

using tagcore::Tag;

// Slots: {AE} adverse event, {TERM} adverse event or distractor term,
// {VAX} silo vaccine name, {FILL} filler word, {NUM} number word.
constexpr std::string_view kTemplates[] = {
    "patient reported {AE} after {VAX} vaccination",
    "{AE} began {NUM} hours after the {VAX} dose",
    "mother states child had {AE} and {AE} following {VAX}",
    "the {FILL} noted {TERM} at the {FILL} site",
    "received {VAX} in the {FILL} {FILL} on day {NUM}",
    "no {FILL} was observed during the {FILL} visit",
    "developed {AE} the next morning",
    "{TERM} was reported by the {FILL}",
    "patient presented with {AE} and was treated with {FILL}",
    "after {VAX} the patient experienced {AE}",
    "history of {TERM} prior to {VAX}",
    "{FILL} {FILL} called to report {TERM}",
    "symptoms included {AE} , {FILL} and {AE}",
    "vaccine lot {NUM} of {VAX} was administered",
    "{AE} resolved after {NUM} days",
    "the {FILL} {FILL} was unremarkable",
    "seen in {FILL} for {AE} on day {NUM}",
    "parent reports {TERM} since the {FILL}",
    "given {VAX} and {VAX} at the same {FILL}",
    "{NUM} days later {AE} occurred",
    "reporter states {TERM} with {FILL}",
    "information received from {FILL} regarding {VAX}",
    "experienced {AE} {FILL} after injection",
    "{FILL} reported that {TERM} persisted",
    "patient recovered from {AE}",
    "follow up {FILL} stated {TERM}",
    "no adverse {FILL} were reported after {VAX}",
    "developed {AE} and {TERM} within {NUM} hours",
    "the {FILL} {FILL} of the patient was {FILL}",
    "{VAX} was given and {TERM} followed",
};

constexpr std::string_view kNumbers[] = {"one", "two",    "three", "four",
                                         "five", "six",   "seven", "ten",
                                         "twelve", "24",  "48",    "72"};

struct LadderRow {
  const char* id;
  double sentences;
};

// Unscaled sentence counts of the default silos, largest first.
constexpr LadderRow kDefaultLadder[] = {
    {"silo01", 42207}, {"silo02", 12688}, {"silo03", 10848}, {"silo04", 11366},
    {"silo05", 6664},  {"silo06", 1751},  {"silo07", 1413},  {"silo08", 426},
    {"silo09", 206},   {"silo10", 161},
};

std::uint64_t HashId(std::string_view id) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (char c : id) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<std::string_view> SplitWords(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const std::size_t next = s.find(' ', pos);
    const std::size_t end = next == std::string_view::npos ? s.size() : next;
    if (end > pos) out.push_back(s.substr(pos, end - pos));
    pos = end + 1;
  }
  return out;
}

class PseudoWordSource {
 public:
  explicit PseudoWordSource(Rng& rng) : rng_(rng) {
    for (std::string_view t : kTemplates) {
      for (std::string_view w : SplitWords(t)) used_.emplace(w);
    }
    for (std::string_view n : kNumbers) used_.emplace(n);
  }

  std::string Next() {
    static constexpr std::string_view kOnsets = "bdfgklmnprstvz";
    static constexpr std::string_view kVowels = "aeiou";
    std::uniform_int_distribution<int> syllables(2, 3);
    std::uniform_int_distribution<std::size_t> onset(0, kOnsets.size() - 1);
    std::uniform_int_distribution<std::size_t> vowel(0, kVowels.size() - 1);
    for (;;) {
      std::string w;
      const int n = syllables(rng_);
      for (int i = 0; i < n; ++i) {
        w.push_back(kOnsets[onset(rng_)]);
        w.push_back(kVowels[vowel(rng_)]);
      }
      if (used_.insert(w).second) return w;
    }
  }

 private:
  Rng& rng_;
  std::set<std::string> used_;
};

struct Lexicon {
  std::vector<std::vector<std::string>> adverse_events;
  std::vector<std::vector<std::string>> distractors;
  std::vector<std::string> fillers;
};

Lexicon BuildLexicon(const CorpusSpec& spec) {
  Rng rng = MakeRng(spec.seed, StreamTag::kCorpus, {0});
  PseudoWordSource words(rng);
  Lexicon lex;
  std::vector<std::string> modifiers;
  for (int i = 0; i < spec.modifiers; ++i) modifiers.push_back(words.Next());
  // Phrase lengths 1..4 with decreasing probability.
  std::discrete_distribution<int> length({45, 35, 15, 5});
  std::uniform_int_distribution<std::size_t> pick_mod(0, modifiers.size() - 1);
  for (int i = 0; i < spec.adverse_events; ++i) {
    const int len = length(rng) + 1;
    std::vector<std::string> phrase;
    for (int k = 1; k < len; ++k) phrase.push_back(modifiers[pick_mod(rng)]);
    phrase.push_back(words.Next());
    lex.adverse_events.push_back(std::move(phrase));
  }
  std::discrete_distribution<int> d_length({70, 30});
  for (int i = 0; i < spec.distractor_terms; ++i) {
    const int len = d_length(rng) + 1;
    std::vector<std::string> phrase;
    for (int k = 0; k < len; ++k) phrase.push_back(words.Next());
    lex.distractors.push_back(std::move(phrase));
  }
  for (int i = 0; i < spec.filler_words; ++i) lex.fillers.push_back(words.Next());
  return lex;
}

double SkewExponent(const CorpusSpec& spec, const SiloProfile& profile) {
  if (profile.skew_exponent) return *profile.skew_exponent;
  Rng rng = MakeRng(spec.seed, StreamTag::kSkew, {HashId(profile.id)});
  std::uniform_real_distribution<double> u(spec.skew_min, spec.skew_max);
  return u(rng);
}

std::vector<double> ZipfDistribution(std::size_t n, double exponent) {
  std::vector<double> p(n);
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    p[k] = std::pow(static_cast<double>(k + 1), -exponent);
    total += p[k];
  }
  for (double& v : p) v /= total;
  return p;
}

std::vector<std::string> VaccineNames(const CorpusSpec& spec,
                                      const SiloProfile& profile) {
  Rng rng = MakeRng(spec.seed, StreamTag::kCorpus, {2, HashId(profile.id)});
  PseudoWordSource words(rng);
  std::vector<std::string> out;
  for (int i = 0; i < profile.vaccine_names; ++i) {
    out.push_back(words.Next() + "-" + profile.id);
  }
  return out;
}

struct TemplateInfo {
  std::vector<std::string_view> words;
  double expected_entities = 0.0;
};

std::vector<TemplateInfo> ParseTemplates(double term_entity_probability) {
  std::vector<TemplateInfo> out;
  for (std::string_view t : kTemplates) {
    TemplateInfo info;
    info.words = SplitWords(t);
    for (std::string_view w : info.words) {
      if (w == "{AE}") info.expected_entities += 1.0;
      if (w == "{TERM}") info.expected_entities += term_entity_probability;
    }
    out.push_back(std::move(info));
  }
  return out;
}

}  // namespace

CorpusSpec CorpusSpec::Default() {
  CorpusSpec spec;
  for (const LadderRow& row : kDefaultLadder) {
    SiloProfile p;
    p.id = row.id;
    p.base_sentences = row.sentences;
    spec.silos.push_back(p);
  }
  return spec;
}

std::vector<std::size_t> CorpusSpec::SiloSizes() const {
  std::vector<std::size_t> out;
  for (const SiloProfile& p : silos) {
    out.push_back(static_cast<std::size_t>(std::llround(p.base_sentences * scale)));
  }
  return out;
}

void CorpusSpec::Validate() const {
  if (!(scale > 0.0)) throw ConfigError("corpus scale must be > 0");
  if (silos.empty()) throw ConfigError("corpus spec has no silos");
  std::set<std::string> ids;
  for (const SiloProfile& p : silos) {
    if (p.id.empty()) throw ConfigError("silo id must be non-empty");
    if (!ids.insert(p.id).second) {
      throw ConfigError("duplicate silo id '" + p.id + "'");
    }
    if (!(p.base_sentences > 0.0)) {
      throw ConfigError("silo '" + p.id + "' must have a positive size");
    }
    if (p.vaccine_names < 1) {
      throw ConfigError("silo '" + p.id + "' needs at least one vaccine name");
    }
  }
  const auto sizes = SiloSizes();
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < kMinimumSiloSentences ||
        sizes[i] < MinimumSplittableSize(split_ratios)) {
      throw ConfigError("silo '" + silos[i].id + "' would hold " +
                        std::to_string(sizes[i]) +
                        " sentences at scale " + std::to_string(scale) +
                        "; the minimum is " +
                        std::to_string(kMinimumSiloSentences));
    }
  }
  if (adverse_events < 1 || modifiers < 1 || distractor_terms < 1 ||
      filler_words < 1) {
    throw ConfigError("lexicon sizes must be >= 1");
  }
  if (!(term_entity_probability >= 0.0 && term_entity_probability <= 1.0)) {
    throw ConfigError("term_entity_probability must lie in [0, 1]");
  }
  if (!(skew_min > 0.0 && skew_max >= skew_min)) {
    throw ConfigError("skew exponent range must satisfy 0 < min <= max");
  }
  const auto templates = ParseTemplates(term_entity_probability);
  double max_density = 0.0;
  for (const auto& t : templates) {
    max_density = std::max(max_density, t.expected_entities);
  }
  if (!(entities_per_sentence >= 0.0) ||
      entities_per_sentence > max_density) {
    throw ConfigError("entities_per_sentence is not achievable");
  }
}

const SiloDataset& Corpus::Silo(const std::string& id) const {
  for (const SiloDataset& s : silos) {
    if (s.silo_id == id) return s;
  }
  throw ConfigError("unknown silo '" + id + "'");
}

std::vector<TextSentence> GenerateSiloSentences(const CorpusSpec& spec,
                                                const SiloProfile& profile) {
  const Lexicon lex = BuildLexicon(spec);
  const std::vector<std::string> vaccines = VaccineNames(spec, profile);
  const std::vector<double> ae_dist =
      ZipfDistribution(lex.adverse_events.size(), SkewExponent(spec, profile));
  const auto templates = ParseTemplates(spec.term_entity_probability);

  // Mix entity-bearing and entity-free templates so the expected density
  // matches the target.
  std::vector<std::size_t> with_entities;
  std::vector<std::size_t> without_entities;
  double mean_with = 0.0;
  for (std::size_t i = 0; i < templates.size(); ++i) {
    if (templates[i].expected_entities > 0.0) {
      with_entities.push_back(i);
      mean_with += templates[i].expected_entities;
    } else {
      without_entities.push_back(i);
    }
  }
  mean_with /= static_cast<double>(with_entities.size());
  const double p_with = std::min(1.0, spec.entities_per_sentence / mean_with);

  const auto n = static_cast<std::size_t>(
      std::llround(profile.base_sentences * spec.scale));
  Rng rng = MakeRng(spec.seed, StreamTag::kCorpus, {1, HashId(profile.id)});
  std::bernoulli_distribution use_entity_template(p_with);
  std::bernoulli_distribution term_is_entity(spec.term_entity_probability);
  std::uniform_int_distribution<std::size_t> pick_with(0, with_entities.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_without(
      0, without_entities.size() - 1);
  std::discrete_distribution<std::size_t> pick_ae(ae_dist.begin(), ae_dist.end());
  std::uniform_int_distribution<std::size_t> pick_distractor(
      0, lex.distractors.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_vax(0, vaccines.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_fill(0, lex.fillers.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_num(0, std::size(kNumbers) - 1);

  std::vector<TextSentence> out;
  out.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    const TemplateInfo& tpl =
        use_entity_template(rng) ? templates[with_entities[pick_with(rng)]]
                                 : templates[without_entities[pick_without(rng)]];
    TextSentence sentence;
    const auto emit_phrase = [&](const std::vector<std::string>& phrase,
                                 bool entity) {
      for (std::size_t k = 0; k < phrase.size(); ++k) {
        sentence.tokens.push_back(phrase[k]);
        sentence.labels.push_back(!entity ? Tag::kO
                                  : k == 0 ? Tag::kB
                                           : Tag::kI);
      }
    };
    for (std::string_view w : tpl.words) {
      if (w == "{AE}") {
        emit_phrase(lex.adverse_events[pick_ae(rng)], true);
      } else if (w == "{TERM}") {
        if (term_is_entity(rng)) {
          emit_phrase(lex.adverse_events[pick_ae(rng)], true);
        } else {
          emit_phrase(lex.distractors[pick_distractor(rng)], false);
        }
      } else if (w == "{VAX}") {
        emit_phrase({vaccines[pick_vax(rng)]}, false);
      } else if (w == "{FILL}") {
        emit_phrase({lex.fillers[pick_fill(rng)]}, false);
      } else if (w == "{NUM}") {
        emit_phrase({std::string(kNumbers[pick_num(rng)])}, false);
      } else {
        emit_phrase({std::string(w)}, false);
      }
    }
    out.push_back(std::move(sentence));
  }
  return out;
}

Corpus Generate(const CorpusSpec& spec) {
  spec.Validate();
  const Lexicon lex = BuildLexicon(spec);
  Corpus corpus;
  corpus.adverse_events = lex.adverse_events;

  std::vector<std::vector<TextSentence>> text(spec.silos.size());
  for (std::size_t i = 0; i < spec.silos.size(); ++i) {
    const SiloProfile& profile = spec.silos[i];
    text[i] = GenerateSiloSentences(spec, profile);
    SiloInfo info;
    info.id = profile.id;
    info.skew_exponent = SkewExponent(spec, profile);
    info.vaccine_names = VaccineNames(spec, profile);
    info.adverse_event_distribution =
        ZipfDistribution(lex.adverse_events.size(), info.skew_exponent);
    corpus.info.push_back(std::move(info));
  }

  // The vocabulary is closed over the whole corpus, in silo order.
  for (const auto& silo : text) {
    for (const TextSentence& s : silo) {
      for (const std::string& t : s.tokens) corpus.vocab.Add(t);
    }
  }
  for (std::size_t i = 0; i < spec.silos.size(); ++i) {
    std::vector<tagcore::Sentence> encoded;
    encoded.reserve(text[i].size());
    for (const TextSentence& s : text[i]) encoded.push_back(Encode(s, corpus.vocab));
    corpus.silos.push_back(
        Split(spec.silos[i].id, encoded, spec.split_ratios,
              DeriveSeed(spec.seed, StreamTag::kSplit, {HashId(spec.silos[i].id)})));
  }
  return corpus;
}

void WriteCorpus(const Corpus& corpus, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  for (const SiloDataset& silo : corpus.silos) {
    for (int i = 0; i < kNumSplits; ++i) {
      std::vector<TextSentence> text;
      text.reserve(silo.splits[i].size());
      for (const auto& s : silo.splits[i]) text.push_back(Decode(s, corpus.vocab));
      WriteConll(text, dir / (silo.silo_id + "." +
                              SplitFileName(static_cast<SplitName>(i)) + ".conll"));
    }
  }
}

std::size_t CountEntities(const std::vector<tagcore::Tag>& labels) {
  std::size_t n = 0;
  for (Tag t : labels) {
    if (t == Tag::kB) ++n;
  }
  return n;
}

}  // namespace fedner::corpus
