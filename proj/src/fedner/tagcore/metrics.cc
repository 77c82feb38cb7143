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

#include "fedner/tagcore/metrics.h"

#include "fedner/common/error.h"

namespace fedner::tagcore {

double LabelCounts::Precision() const {
  const std::int64_t denom = true_positive + false_positive;
  return denom == 0 ? 0.0 : static_cast<double>(true_positive) / denom;
}

double LabelCounts::Recall() const {
  const std::int64_t denom = true_positive + false_negative;
  return denom == 0 ? 0.0 : static_cast<double>(true_positive) / denom;
}

double LabelCounts::F1() const {
  const double p = Precision();
  const double r = Recall();
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

void MetricAccumulator::Add(std::span<const Tag> gold,
                            std::span<const Tag> predicted) {
  if (gold.size() != predicted.size()) {
    throw InputError("gold and predicted tag sequences differ in length");
  }
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const int g = TagIndex(gold[i]);
    const int p = TagIndex(predicted[i]);
    ++counts_[g].gold;
    ++counts_[p].predicted;
    if (g == p) {
      ++counts_[g].true_positive;
    } else {
      ++counts_[g].false_negative;
      ++counts_[p].false_positive;
    }
  }
  tokens_ += static_cast<std::int64_t>(gold.size());
}

MetricReport MetricAccumulator::Finish() const {
  MetricReport r;
  r.counts = counts_;
  r.tokens = tokens_;
  const LabelCounts& b = counts_[TagIndex(Tag::kB)];
  const LabelCounts& i = counts_[TagIndex(Tag::kI)];
  r.precision_b = b.Precision();
  r.recall_b = b.Recall();
  r.f1_b = b.F1();
  r.precision_i = i.Precision();
  r.recall_i = i.Recall();
  r.f1_i = i.F1();
  r.mean_f1 = (r.f1_b + r.f1_i) / 2.0;
  return r;
}

MetricReport ScoreTags(std::span<const Tag> gold,
                       std::span<const Tag> predicted) {
  MetricAccumulator acc;
  acc.Add(gold, predicted);
  return acc.Finish();
}

std::vector<Tag> Predict(const TaggerModel& model, const Sentence& sentence) {
  const std::vector<Probabilities> probs = Forward(model, sentence);
  std::vector<Tag> out;
  out.reserve(probs.size());
  for (const Probabilities& p : probs) out.push_back(PredictTag(p));
  return out;
}

MetricReport Evaluate(const TaggerModel& model,
                      std::span<const Sentence> sentences) {
  if (sentences.empty()) throw InputError("empty evaluation set");
  MetricAccumulator acc;
  for (const Sentence& s : sentences) {
    if (s.tokens.size() != s.labels.size()) {
      throw InputError("evaluation sentence has mismatched labels");
    }
    acc.Add(s.labels, Predict(model, s));
  }
  return acc.Finish();
}

}  // namespace fedner::tagcore
