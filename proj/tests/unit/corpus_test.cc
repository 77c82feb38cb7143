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

#include <cmath>
#include <filesystem>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fedner/common/error.h"
#include "fedner/corpus/conll.h"
#include "fedner/corpus/generator.h"
#include "fedner/corpus/split.h"
#include "gtest/gtest.h"

namespace fedner::corpus {
namespace {

using tagcore::Tag;

TEST(ConllTest, RoundTripPreservesSentences) {
  const std::vector<TextSentence> in = {
      {{"fever", "and", "sore", "arm"}, {Tag::kB, Tag::kO, Tag::kB, Tag::kI}},
      {{"no", "reaction"}, {Tag::kO, Tag::kO}},
  };
  std::ostringstream out;
  FormatConll(in, out);
  EXPECT_EQ(out.str(), "fever\tB\nand\tO\nsore\tB\narm\tI\n\nno\tO\nreaction\tO\n\n");
  std::istringstream back(out.str());
  EXPECT_EQ(ParseConll(back), in);
}

TEST(ConllTest, ToleratesCarriageReturnsAndMissingFinalBlank) {
  std::istringstream in("rash\tB\r\nlater\tO\r\n");
  const auto s = ParseConll(in);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].tokens[1], "later");
  EXPECT_EQ(s[0].labels[0], Tag::kB);
}

TEST(ConllTest, ReportsLineNumbersOnMalformedInput) {
  struct Case {
    const char* text;
    std::size_t line;
  };
  for (const Case c : {Case{"a\tO\nb\tX\n\n", 2}, Case{"a\tO\n\nb O\n", 3},
                       Case{"a\tO\nb\tO\tO\n", 2}, Case{"a\tI\n\n", 1},
                       Case{"a\tO\nb\tI\n\n", 1}}) {
    std::istringstream in(c.text);
    try {
      ParseConll(in);
      FAIL() << "accepted: " << c.text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), c.line) << c.text;
    }
  }
}

TEST(ConllTest, FileRoundTripAndMissingFile) {
  const auto dir = std::filesystem::temp_directory_path() / "fedner_conll_test";
  std::filesystem::create_directories(dir);
  const std::vector<TextSentence> in = {{{"x"}, {Tag::kO}}};
  WriteConll(in, dir / "a.conll");
  EXPECT_EQ(ReadConll(dir / "a.conll"), in);
  EXPECT_THROW(ReadConll(dir / "missing.conll"), IoError);
  std::filesystem::remove_all(dir);
}

TEST(ConllTest, EncodeDecodeThroughVocabulary) {
  tagcore::Vocabulary vocab;
  vocab.Add("fever");
  const TextSentence s{{"fever", "unseen"}, {Tag::kB, Tag::kO}};
  const tagcore::Sentence enc = Encode(s, vocab);
  EXPECT_EQ(enc.tokens[0], vocab.Lookup("fever"));
  EXPECT_EQ(enc.tokens[1], tagcore::kUnkId);
  const TextSentence dec = Decode(enc, vocab);
  EXPECT_EQ(dec.tokens[0], "fever");
  EXPECT_EQ(dec.labels, s.labels);
}

TEST(SplitTest, SizesAreWithinOneOfExactShareAndSumToN) {
  for (std::size_t n = 10; n < 600; n += 7) {
    const auto sizes = SplitSizes(n, kDefaultSplitRatios);
    EXPECT_EQ(std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}), n);
    for (int k = 0; k < kNumSplits; ++k) {
      EXPECT_LE(std::abs(double(sizes[k]) - n * kDefaultSplitRatios[k]), 1.0);
      EXPECT_GT(sizes[k], 0u) << n;
    }
  }
  EXPECT_EQ(SplitSizes(100, kDefaultSplitRatios),
            (std::array<std::size_t, 4>{60, 10, 10, 20}));
}

TEST(SplitTest, IndicesPartitionAndAreSeedDeterministic) {
  const auto a = SplitIndices(57, kDefaultSplitRatios, 9);
  const auto b = SplitIndices(57, kDefaultSplitRatios, 9);
  const auto c = SplitIndices(57, kDefaultSplitRatios, 10);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  std::set<std::size_t> all;
  for (const auto& part : a) all.insert(part.begin(), part.end());
  EXPECT_EQ(all.size(), 57u);
  EXPECT_EQ(*all.rbegin(), 56u);
}

TEST(SplitTest, RejectsBadRatiosAndTinySets) {
  EXPECT_THROW(SplitIndices(50, {0.5, 0.1, 0.1, 0.2}, 1), ConfigError);
  EXPECT_THROW(SplitIndices(3, kDefaultSplitRatios, 1), InputError);
  EXPECT_LE(MinimumSplittableSize(kDefaultSplitRatios), kMinimumSiloSentences);
}

class GeneratorTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    corpus_ = new Corpus(Generate(CorpusSpec::Default()));
  }
  static void TearDownTestSuite() { delete corpus_; }
  static Corpus* corpus_;
};
Corpus* GeneratorTest::corpus_ = nullptr;

TEST_F(GeneratorTest, DefaultLadderSizes) {
  const std::vector<std::size_t> want = {4221, 1269, 1085, 1137, 666,
                                         175,  141,  43,   21,   16};
  EXPECT_EQ(CorpusSpec::Default().SiloSizes(), want);
  ASSERT_EQ(corpus_->silos.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    EXPECT_EQ(corpus_->silos[i].TotalSentences(), want[i]);
    EXPECT_EQ(corpus_->silos[i].train().size(),
              SplitSizes(want[i], kDefaultSplitRatios)[0]);
  }
}

TEST_F(GeneratorTest, SentencesAreWellFormedAndInVocabulary) {
  std::size_t entities = 0, sentences = 0;
  for (const auto& silo : corpus_->silos) {
    for (const auto& split : silo.splits) {
      for (const auto& s : split) {
        ASSERT_FALSE(s.tokens.empty());
        ASSERT_TRUE(tagcore::IsWellFormedBio(s.labels));
        for (auto t : s.tokens) {
          ASSERT_GE(t, 2);
          ASSERT_LT(t, corpus_->vocab.size());
        }
        entities += CountEntities(s.labels);
        ++sentences;
      }
    }
  }
  const double rate = double(entities) / sentences;
  EXPECT_NEAR(rate, CorpusSpec().entities_per_sentence, 0.1);
}

TEST_F(GeneratorTest, DeterministicAndSeedSensitive) {
  const Corpus again = Generate(CorpusSpec::Default());
  EXPECT_EQ(again.vocab.words(), corpus_->vocab.words());
  for (std::size_t i = 0; i < again.silos.size(); ++i) {
    EXPECT_EQ(again.silos[i].splits, corpus_->silos[i].splits);
  }
  CorpusSpec other = CorpusSpec::Default();
  other.seed += 1;
  const Corpus changed = Generate(other);
  EXPECT_NE(changed.silos[0].train(), corpus_->silos[0].train());
}

TEST_F(GeneratorTest, SilosHaveDistinctSkews) {
  std::set<double> skews;
  for (const auto& info : corpus_->info) {
    EXPECT_GE(info.skew_exponent, CorpusSpec().skew_min);
    EXPECT_LE(info.skew_exponent, CorpusSpec().skew_max);
    double total = 0.0;
    for (double p : info.adverse_event_distribution) total += p;
    EXPECT_NEAR(total, 1.0, 1e-9);
    skews.insert(info.skew_exponent);
  }
  EXPECT_EQ(skews.size(), corpus_->info.size());
}

TEST_F(GeneratorTest, VaccineLexiconsAreDisjointAndEventFrequenciesDiffer) {
  const auto& info = corpus_->info;
  for (std::size_t a = 0; a < info.size(); ++a) {
    const std::set<std::string> va(info[a].vaccine_names.begin(),
                                   info[a].vaccine_names.end());
    EXPECT_FALSE(va.empty());
    for (std::size_t b = a + 1; b < info.size(); ++b) {
      for (const auto& name : info[b].vaccine_names) {
        EXPECT_EQ(va.count(name), 0u) << info[a].id << " " << info[b].id;
      }
      // KL(P_a || P_b) over the shared adverse-event lexicon.
      double kl = 0.0;
      const auto& p = info[a].adverse_event_distribution;
      const auto& q = info[b].adverse_event_distribution;
      ASSERT_EQ(p.size(), q.size());
      for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] > 0.0) kl += p[k] * std::log(p[k] / q[k]);
      }
      EXPECT_GT(kl, 0.0) << info[a].id << " " << info[b].id;
    }
  }
}

TEST(GeneratorSpecTest, RejectsInfeasibleSpecs) {
  CorpusSpec s = CorpusSpec::Default();
  s.scale = 0.0;
  EXPECT_THROW(Generate(s), ConfigError);
  s = CorpusSpec::Default();
  s.silos[9].base_sentences = 50;  // 5 sentences at scale 0.1
  EXPECT_THROW(Generate(s), ConfigError);
  s = CorpusSpec::Default();
  s.silos[1].id = s.silos[0].id;
  EXPECT_THROW(Generate(s), ConfigError);
  s = CorpusSpec::Default();
  s.silos.clear();
  EXPECT_THROW(Generate(s), ConfigError);
}

TEST(GeneratorSpecTest, IdenticalProfilesGiveIdenticalSentences) {
  CorpusSpec s = CorpusSpec::Default();
  SiloProfile p{"x", 300, 4, 1.1};
  EXPECT_EQ(GenerateSiloSentences(s, p), GenerateSiloSentences(s, p));
}

TEST(GeneratorSpecTest, WritesEveryPartitionFile) {
  CorpusSpec s = CorpusSpec::Default();
  s.silos.resize(2);
  s.silos[0].base_sentences = 200;
  s.silos[1].base_sentences = 150;
  const Corpus c = Generate(s);
  const auto dir = std::filesystem::temp_directory_path() / "fedner_gen_test";
  std::filesystem::remove_all(dir);
  WriteCorpus(c, dir);
  for (const auto& silo : c.silos) {
    for (int k = 0; k < kNumSplits; ++k) {
      const auto path = dir / (silo.silo_id + "." +
                               SplitFileName(static_cast<SplitName>(k)) + ".conll");
      ASSERT_TRUE(std::filesystem::exists(path)) << path;
      EXPECT_EQ(ReadConll(path).size(), silo.splits[k].size());
    }
  }
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace fedner::corpus
