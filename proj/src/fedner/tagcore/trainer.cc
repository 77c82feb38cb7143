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

#include "fedner/tagcore/trainer.h"

#include <algorithm>
#include <numeric>

#include "fedner/common/error.h"

namespace fedner::tagcore {

void GradientWorkspace::ClearSum() { std::fill(sum_.begin(), sum_.end(), 0.0); }

double GradientWorkspace::ComputeExample(const TaggerModel& model,
                                         const Sentence& sentence) {
  ValidateSentence(sentence);
  std::fill(example_.begin(), example_.end(), 0.0);
  return model.AccumulateGradient(sentence, example_);
}

void GradientWorkspace::AddExampleToSum(double scale) {
  if (scale == 1.0) {
    for (std::size_t i = 0; i < sum_.size(); ++i) sum_[i] += example_[i];
  } else {
    for (std::size_t i = 0; i < sum_.size(); ++i) sum_[i] += scale * example_[i];
  }
}

void ApplyUpdate(TaggerModel& model, std::span<const double> sum,
                 double divisor, double learning_rate) {
  std::span<double> p = model.mutable_values();
  if (sum.size() != p.size()) {
    throw ProtocolError("update does not match model layout");
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] -= learning_rate * (sum[i] / divisor);
  }
}

double SgdStep(TaggerModel& model, std::span<const Sentence* const> batch,
               double learning_rate, GradientWorkspace& workspace) {
  if (batch.empty()) throw InputError("empty batch");
  workspace.ClearSum();
  double loss = 0.0;
  for (const Sentence* s : batch) {
    loss += workspace.ComputeExample(model, *s);
    workspace.AddExampleToSum(1.0);
  }
  const auto n = static_cast<double>(batch.size());
  ApplyUpdate(model, workspace.sum(), n, learning_rate);
  return loss / n;
}

double SgdStep(TaggerModel& model, std::span<const Sentence> batch,
               double learning_rate, GradientWorkspace& workspace) {
  std::vector<const Sentence*> ptrs;
  ptrs.reserve(batch.size());
  for (const Sentence& s : batch) ptrs.push_back(&s);
  return SgdStep(model, ptrs, learning_rate, workspace);
}

double TrainEpoch(TaggerModel& model, std::span<const Sentence> sentences,
                  double learning_rate, int batch_size, Rng& rng) {
  if (sentences.empty()) throw InputError("empty training set");
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (!(learning_rate >= 0.0)) throw ConfigError("learning_rate must be >= 0");

  std::vector<std::size_t> order(sentences.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);

  GradientWorkspace workspace(model.parameters().size());
  std::vector<const Sentence*> batch;
  double total_loss = 0.0;
  const auto step = static_cast<std::size_t>(batch_size);
  for (std::size_t start = 0; start < order.size(); start += step) {
    const std::size_t end = std::min(order.size(), start + step);
    batch.clear();
    for (std::size_t i = start; i < end; ++i) batch.push_back(&sentences[order[i]]);
    total_loss += SgdStep(model, batch, learning_rate, workspace) *
                  static_cast<double>(batch.size());
  }
  return total_loss / static_cast<double>(sentences.size());
}

}  // namespace fedner::tagcore
