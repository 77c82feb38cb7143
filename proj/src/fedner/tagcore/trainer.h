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

#ifndef FEDNER_TAGCORE_TRAINER_H_
#define FEDNER_TAGCORE_TRAINER_H_

#include <span>
#include <vector>

#include "fedner/common/rng.h"
#include "fedner/tagcore/sentence.h"
#include "fedner/tagcore/tagger_model.h"

namespace fedner::tagcore {

// Reusable per-example gradient scratch space. Sums are always formed by
// computing each sentence's gradient in isolation and then adding it to the
// running total in lot order, so the clipped DP path with no clipping and no
// noise reproduces the plain path bit for bit.
class GradientWorkspace {
 public:
  explicit GradientWorkspace(std::size_t n) : example_(n), sum_(n) {}

  std::span<double> example() { return example_; }
  std::span<double> sum() { return sum_; }
  void ClearSum();
  // Zeroes the example buffer and fills it with the gradient of `sentence`.
  double ComputeExample(const TaggerModel& model, const Sentence& sentence);
  // sum += scale * example; scale == 1 adds the example unchanged.
  void AddExampleToSum(double scale);

 private:
  std::vector<double> example_;
  std::vector<double> sum_;
};

// params[i] -= learning_rate * (sum[i] / divisor)
void ApplyUpdate(TaggerModel& model, std::span<const double> sum,
                 double divisor, double learning_rate);

// One plain SGD step on the mean gradient of `batch`. Returns the mean loss.
double SgdStep(TaggerModel& model, std::span<const Sentence* const> batch,
               double learning_rate, GradientWorkspace& workspace);
double SgdStep(TaggerModel& model, std::span<const Sentence> batch,
               double learning_rate, GradientWorkspace& workspace);

// Shuffles with `rng`, then takes ceil(N / batch_size) averaged SGD steps.
// Returns the mean per-sentence training loss. Throws InputError on an empty
// dataset and ConfigError on a non-positive batch size or negative rate.
double TrainEpoch(TaggerModel& model, std::span<const Sentence> sentences,
                  double learning_rate, int batch_size, Rng& rng);

}  // namespace fedner::tagcore

#endif  // FEDNER_TAGCORE_TRAINER_H_
