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

#ifndef FEDNER_TAGCORE_METRICS_H_
#define FEDNER_TAGCORE_METRICS_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "fedner/tagcore/sentence.h"
#include "fedner/tagcore/tagger_model.h"

namespace fedner::tagcore {

// One-vs-all tallies for a single label.
struct LabelCounts {
  std::int64_t true_positive = 0;
  std::int64_t false_positive = 0;
  std::int64_t false_negative = 0;
  std::int64_t gold = 0;
  std::int64_t predicted = 0;

  double Precision() const;
  double Recall() const;
  // Harmonic mean of precision and recall; 0 when both are 0.
  double F1() const;
};

// Token-level scores. mean_f1 averages the B and I scores only.
struct MetricReport {
  std::array<LabelCounts, kNumTags> counts{};
  double precision_b = 0.0;
  double recall_b = 0.0;
  double f1_b = 0.0;
  double precision_i = 0.0;
  double recall_i = 0.0;
  double f1_i = 0.0;
  double mean_f1 = 0.0;
  std::int64_t tokens = 0;

  const LabelCounts& Counts(Tag t) const { return counts[TagIndex(t)]; }
};

// Scores predicted tags against gold tags of equal length.
class MetricAccumulator {
 public:
  void Add(std::span<const Tag> gold, std::span<const Tag> predicted);
  MetricReport Finish() const;

 private:
  std::array<LabelCounts, kNumTags> counts_{};
  std::int64_t tokens_ = 0;
};

MetricReport ScoreTags(std::span<const Tag> gold, std::span<const Tag> predicted);

std::vector<Tag> Predict(const TaggerModel& model, const Sentence& sentence);

// Throws InputError on an empty evaluation set.
MetricReport Evaluate(const TaggerModel& model,
                      std::span<const Sentence> sentences);

}  // namespace fedner::tagcore

#endif  // FEDNER_TAGCORE_METRICS_H_
