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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <vector>

#include "fedner/common/error.h"
#include "fedner/tagcore/metrics.h"
#include "fedner/tagcore/parameter_vector.h"
#include "fedner/tagcore/sentence.h"
#include "fedner/tagcore/tagger_model.h"
#include "fedner/tagcore/trainer.h"
#include "fedner/tagcore/vocabulary.h"
#include "gtest/gtest.h"
#include "oracles/generators.h"
#include "oracles/tagger_oracle.h"

namespace fedner::tagcore {
namespace {

using testing::RandomModel;
using testing::RandomSentence;
using testing::RandomShape;

oracle::Dims DimsOf(const ModelShape& s) {
  return {s.vocab_size, s.embedding_dim, s.hidden_dim, s.window_radius};
}

std::vector<int> Ints(const std::vector<TokenId>& v) {
  return {v.begin(), v.end()};
}

std::vector<int> LabelInts(const std::vector<Tag>& v) {
  std::vector<int> out;
  for (Tag t : v) out.push_back(TagIndex(t));
  return out;
}

double MaxAbsDiff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

TEST(SentenceTest, BioWellFormedness) {
  using T = Tag;
  EXPECT_TRUE(IsWellFormedBio(std::vector<T>{T::kB, T::kI, T::kO, T::kB}));
  EXPECT_TRUE(IsWellFormedBio(std::vector<T>{}));
  EXPECT_FALSE(IsWellFormedBio(std::vector<T>{T::kI}));
  EXPECT_FALSE(IsWellFormedBio(std::vector<T>{T::kO, T::kI}));
  Sentence bad{{2, 3}, {T::kO, T::kI}};
  EXPECT_THROW(ValidateSentence(bad), InputError);
  Sentence ragged{{2, 3}, {T::kO}};
  EXPECT_THROW(ValidateSentence(ragged), InputError);
}

TEST(VocabularyTest, ReservedIdsAndUnknownLookup) {
  Vocabulary v;
  EXPECT_EQ(v.size(), 2);
  const TokenId fever = v.Add("fever");
  EXPECT_EQ(fever, 2);
  EXPECT_EQ(v.Add("fever"), fever);
  EXPECT_EQ(v.Lookup("fever"), fever);
  EXPECT_EQ(v.Lookup("never-seen"), kUnkId);
  EXPECT_EQ(v.Word(kPadId), "<pad>");
}

TEST(ParameterVectorTest, ArithmeticAndDigest) {
  ParameterVector a("L", {1.0, 2.0, 3.0});
  ParameterVector b("L", {0.5, 0.5, 0.5});
  a += b;
  EXPECT_EQ(a.values()[2], 3.5);
  a.AddScaled(b, -2.0);
  EXPECT_EQ(a.values()[0], 0.5);
  EXPECT_DOUBLE_EQ(ParameterVector("L", {3.0, 4.0}).L2Norm(), 5.0);
  EXPECT_EQ(a.DigestHex().size(), 64u);
  ParameterVector c = a;
  EXPECT_TRUE(c.BitwiseEquals(a));
  EXPECT_EQ(c.DigestHex(), a.DigestHex());
  c.mutable_values()[1] = std::nextafter(c.values()[1], 10.0);
  EXPECT_NE(c.DigestHex(), a.DigestHex());
  // The layout id is part of the digest.
  EXPECT_NE(ParameterVector("L", {1.0}).DigestHex(),
            ParameterVector("M", {1.0}).DigestHex());
  EXPECT_THROW(a += ParameterVector("M", {1.0, 2.0, 3.0}), ProtocolError);
  EXPECT_THROW(a += ParameterVector("L", {1.0}), ProtocolError);
}

TEST(TaggerModelTest, ForwardMatchesNaiveRecomputation) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const ModelShape shape = RandomShape(rng);
    const TaggerModel model = RandomModel(shape, rng, 1.5);
    const Sentence s = RandomSentence(shape.vocab_size, rng);
    const auto got = model.Forward(s.tokens);
    const std::vector<double> p(model.parameters().values().begin(),
                                model.parameters().values().end());
    const auto want = oracle::NaiveForward(DimsOf(shape), p, Ints(s.tokens));
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t t = 0; t < got.size(); ++t) {
      for (int c = 0; c < kNumTags; ++c) {
        EXPECT_NEAR(got[t][c], want[t][c], 1e-12);
      }
    }
  }
}

TEST(TaggerModelTest, ParameterCountAndLayout) {
  ModelShape s;
  s.vocab_size = 10;
  s.embedding_dim = 16;
  s.hidden_dim = 32;
  s.window_radius = 2;
  EXPECT_EQ(s.ParameterCount(), 10u * 16 + 80 * 32 + 32 + 32 * 3 + 3);
  EXPECT_EQ(s.LayoutId(), "window-ffn/1:vocab=10,emb=16,hidden=32,radius=2");
  ModelShape tiny = s;
  tiny.vocab_size = 1;
  EXPECT_THROW(tiny.Validate(), ConfigError);
}

TEST(TaggerModelTest, OutOfVocabularyTokenIsRejected) {
  ModelShape s;
  s.vocab_size = 4;
  TaggerModel m(s);
  EXPECT_THROW(m.Forward(std::vector<TokenId>{1, 4}), InputError);
  EXPECT_THROW(m.Forward(std::vector<TokenId>{-1}), InputError);
}

TEST(TaggerModelTest, ZeroModelIsUniformAndPredictsO) {
  ModelShape s;
  s.vocab_size = 5;
  TaggerModel m(s);
  const auto probs = m.Forward(std::vector<TokenId>{2, 3});
  for (const auto& p : probs) {
    for (double v : p) EXPECT_DOUBLE_EQ(v, 1.0 / 3.0);
    EXPECT_EQ(PredictTag(p), Tag::kO);
  }
  EXPECT_EQ(PredictTag({0.4, 0.4, 0.2}), Tag::kB);
  EXPECT_EQ(PredictTag({0.3, 0.5, 0.2}), Tag::kI);
}

// Analytic gradient versus central differences of the naive oracle loss.
TEST(TaggerModelTest, GradientMatchesFiniteDifferences) {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const ModelShape shape = RandomShape(rng);
    const TaggerModel model = RandomModel(shape, rng);
    const Sentence s = RandomSentence(shape.vocab_size, rng, 6);
    const auto analytic = LossAndGradient(model, s);
    const std::vector<double> p(model.parameters().values().begin(),
                                model.parameters().values().end());
    const auto tokens = Ints(s.tokens);
    const auto labels = LabelInts(s.labels);
    const auto numeric = oracle::CentralDifference(
        [&](const std::vector<double>& x) {
          return oracle::NaiveLoss(DimsOf(shape), x, tokens, labels);
        },
        p, 1e-5);
    EXPECT_NEAR(analytic.loss,
                oracle::NaiveLoss(DimsOf(shape), p, tokens, labels), 1e-12);
    worst = std::max(worst, MaxAbsDiff(analytic.gradient.values(), numeric));
  }
  EXPECT_LT(worst, 1e-6);
  const double seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  EXPECT_LT(seconds, 10.0);
}

TEST(MetricsTest, HandTalliedFixture) {
  using T = Tag;
  // gold      B I O B O O
  // predicted B O O B I O
  const std::vector<T> gold = {T::kB, T::kI, T::kO, T::kB, T::kO, T::kO};
  const std::vector<T> pred = {T::kB, T::kO, T::kO, T::kB, T::kI, T::kO};
  const MetricReport r = ScoreTags(gold, pred);
  // B: tp 2, fp 0, fn 0 -> P = R = F1 = 1.
  EXPECT_EQ(r.Counts(T::kB).true_positive, 2);
  EXPECT_DOUBLE_EQ(r.f1_b, 1.0);
  // I: tp 0, fp 1, fn 1 -> P = R = F1 = 0.
  EXPECT_EQ(r.Counts(T::kI).false_positive, 1);
  EXPECT_EQ(r.Counts(T::kI).false_negative, 1);
  EXPECT_DOUBLE_EQ(r.f1_i, 0.0);
  EXPECT_DOUBLE_EQ(r.mean_f1, 0.5);
  EXPECT_EQ(r.tokens, 6);

  // B: tp 1, fp 1, fn 1 -> 0.5; I: tp 1, fp 0, fn 1 -> P 1, R 0.5, F1 2/3.
  const std::vector<T> gold2 = {T::kB, T::kI, T::kI, T::kB, T::kO};
  const std::vector<T> pred2 = {T::kB, T::kI, T::kO, T::kO, T::kB};
  const MetricReport r2 = ScoreTags(gold2, pred2);
  EXPECT_DOUBLE_EQ(r2.precision_b, 0.5);
  EXPECT_DOUBLE_EQ(r2.recall_b, 0.5);
  EXPECT_DOUBLE_EQ(r2.f1_b, 0.5);
  EXPECT_DOUBLE_EQ(r2.precision_i, 1.0);
  EXPECT_DOUBLE_EQ(r2.recall_i, 0.5);
  EXPECT_NEAR(r2.f1_i, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(r2.mean_f1, (0.5 + 2.0 / 3.0) / 2.0, 1e-15);
}

TEST(MetricsTest, PerfectPredictionAndEmptyClasses) {
  using T = Tag;
  const std::vector<T> gold = {T::kB, T::kI, T::kO};
  EXPECT_DOUBLE_EQ(ScoreTags(gold, gold).mean_f1, 1.0);
  // No entities anywhere: F1 is 0 by convention, not NaN.
  const std::vector<T> none = {T::kO, T::kO};
  const MetricReport r = ScoreTags(none, none);
  EXPECT_EQ(r.mean_f1, 0.0);
  EXPECT_THROW(ScoreTags(gold, none), InputError);
}

TEST(MetricsTest, EvaluateRejectsEmptySet) {
  ModelShape s;
  s.vocab_size = 4;
  TaggerModel m(s);
  EXPECT_THROW(Evaluate(m, std::vector<Sentence>{}), InputError);
}

// Property: duplicating a sentence in a batch doubles its contribution.
TEST(TrainerTest, DuplicateSentenceDoublesContribution) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const ModelShape shape = RandomShape(rng);
    const TaggerModel model = RandomModel(shape, rng);
    const Sentence s = RandomSentence(shape.vocab_size, rng);
    GradientWorkspace once(shape.ParameterCount());
    once.ComputeExample(model, s);
    once.AddExampleToSum(1.0);
    GradientWorkspace twice(shape.ParameterCount());
    twice.ComputeExample(model, s);
    twice.AddExampleToSum(1.0);
    twice.AddExampleToSum(1.0);
    for (std::size_t i = 0; i < shape.ParameterCount(); ++i) {
      EXPECT_EQ(twice.sum()[i], 2.0 * once.sum()[i]);
    }
  }
}

TEST(TrainerTest, EpochPropertiesAndErrors) {
  Rng rng(5);
  const ModelShape shape = RandomShape(rng);
  const TaggerModel start = RandomModel(shape, rng);
  const auto data = testing::RandomSentences(9, shape.vocab_size, rng);

  TaggerModel frozen = start;
  Rng r0(1);
  TrainEpoch(frozen, data, 0.0, 2, r0);
  EXPECT_TRUE(frozen.parameters().BitwiseEquals(start.parameters()));

  // batch >= N is one full-batch step, independent of the shuffle.
  TaggerModel full = start;
  Rng r1(1);
  TrainEpoch(full, data, 0.1, 100, r1);
  TaggerModel manual = start;
  GradientWorkspace ws(shape.ParameterCount());
  SgdStep(manual, std::span<const Sentence>(data), 0.1, ws);
  EXPECT_LT(MaxAbsDiff(full.parameters().values(), manual.parameters().values()),
            1e-14);

  // Same seed, same result.
  TaggerModel a = start, b = start;
  Rng ra(3), rb(3);
  TrainEpoch(a, data, 0.05, 2, ra);
  TrainEpoch(b, data, 0.05, 2, rb);
  EXPECT_TRUE(a.parameters().BitwiseEquals(b.parameters()));

  Rng re(1);
  TaggerModel m = start;
  EXPECT_THROW(TrainEpoch(m, std::vector<Sentence>{}, 0.1, 1, re), InputError);
  EXPECT_THROW(TrainEpoch(m, data, 0.1, 0, re), ConfigError);
  EXPECT_THROW(TrainEpoch(m, data, -0.1, 1, re), ConfigError);
}

TEST(TrainerTest, TrainingReducesLossOnSeparableData) {
  ModelShape shape;
  shape.vocab_size = 6;
  shape.embedding_dim = 4;
  shape.hidden_dim = 6;
  shape.window_radius = 1;
  Rng rng(9);
  TaggerModel model = TaggerModel::Initialize(shape, rng);
  // Token 2 always starts an entity, 3 continues it, others are outside.
  std::vector<Sentence> data = {
      {{4, 2, 3, 5}, {Tag::kO, Tag::kB, Tag::kI, Tag::kO}},
      {{2, 5, 4}, {Tag::kB, Tag::kO, Tag::kO}},
      {{5, 4, 2, 3, 3}, {Tag::kO, Tag::kO, Tag::kB, Tag::kI, Tag::kI}},
  };
  const double before = Evaluate(model, data).mean_f1;
  Rng train(1);
  for (int e = 0; e < 300; ++e) TrainEpoch(model, data, 0.2, 1, train);
  EXPECT_LE(before, 1.0);
  EXPECT_DOUBLE_EQ(Evaluate(model, data).mean_f1, 1.0);
}

}  // namespace
}  // namespace fedner::tagcore
