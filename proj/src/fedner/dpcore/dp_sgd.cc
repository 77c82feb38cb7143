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

#include "fedner/dpcore/dp_sgd.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "fedner/common/error.h"

namespace fedner::dpcore {

std::int64_t StepsPerEpoch(std::size_t train_size, int lot_size) {
  const auto l = static_cast<std::size_t>(lot_size);
  return static_cast<std::int64_t>((train_size + l - 1) / l);
}

PrivacySpec MakePrivacySpec(double epsilon, double delta, double clip_bound,
                            int lot_size, std::size_t train_size, int rounds,
                            int local_epochs,
                            const CalibrationOptions& options) {
  if (lot_size < 1) throw ConfigError("lot size must be >= 1");
  if (train_size == 0) throw ConfigError("silo has no training examples");
  if (rounds < 0 || local_epochs < 1) {
    throw ConfigError("rounds must be >= 0 and local_epochs >= 1");
  }
  if (!(clip_bound > 0.0)) throw ConfigError("clip bound must be > 0");
  PrivacySpec spec;
  spec.epsilon = epsilon;
  spec.delta = delta;
  spec.clip_bound = clip_bound;
  spec.lot_size = lot_size;
  spec.sampling_rate =
      std::min(1.0, static_cast<double>(lot_size) / static_cast<double>(train_size));
  spec.steps = static_cast<std::int64_t>(rounds) * local_epochs *
               StepsPerEpoch(train_size, lot_size);
  const CalibrationResult cal =
      CalibrateSigma(epsilon, spec.sampling_rate, spec.steps, delta, options);
  spec.sigma = cal.sigma;
  spec.achieved_epsilon = cal.achieved_epsilon;
  return spec;
}

double ClipInPlace(std::span<double> grad, double clip_bound) {
  if (!(clip_bound > 0.0)) throw ConfigError("clip bound must be > 0");
  double sq = 0.0;
  for (double v : grad) {
    if (!std::isfinite(v)) throw InputError("gradient has non-finite component");
    sq += v * v;
  }
  const double norm = std::sqrt(sq);
  if (norm <= clip_bound) return 1.0;
  const double scale = clip_bound / norm;
  for (double& v : grad) v *= scale;
  return scale;
}

tagcore::ParameterVector Clip(const tagcore::ParameterVector& grad,
                              double clip_bound) {
  tagcore::ParameterVector out = grad;
  ClipInPlace(out.mutable_values(), clip_bound);
  return out;
}

DpStepStats DpSgdStep(tagcore::TaggerModel& model,
                      std::span<const tagcore::Sentence* const> lot,
                      double clip_bound, double sigma, int lot_size,
                      double learning_rate, Rng& rng,
                      tagcore::GradientWorkspace& workspace) {
  if (lot_size <= 0) throw ConfigError("lot size L must be > 0");
  if (!(sigma >= 0.0)) throw ConfigError("sigma must be >= 0");
  DpStepStats stats;
  stats.lot_size = lot.size();
  workspace.ClearSum();
  double loss = 0.0;
  for (const tagcore::Sentence* s : lot) {
    loss += workspace.ComputeExample(model, *s);
    if (ClipInPlace(workspace.example(), clip_bound) != 1.0) ++stats.clipped;
    workspace.AddExampleToSum(1.0);
  }
  if (sigma > 0.0) {
    std::normal_distribution<double> noise(0.0, sigma * clip_bound);
    for (double& v : workspace.sum()) v += noise(rng);
  }
  tagcore::ApplyUpdate(model, workspace.sum(), static_cast<double>(lot_size),
                       learning_rate);
  stats.mean_loss = lot.empty() ? 0.0 : loss / static_cast<double>(lot.size());
  return stats;
}

std::vector<std::size_t> SamplePoissonLot(std::size_t n, double q, Rng& rng) {
  std::vector<std::size_t> out;
  if (q >= 1.0) {
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = i;
    return out;
  }
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (u(rng) < q) out.push_back(i);
  }
  return out;
}

double DpTrainEpoch(tagcore::TaggerModel& model,
                    std::span<const tagcore::Sentence> sentences,
                    const PrivacySpec& privacy, double learning_rate,
                    Rng& rng) {
  if (sentences.empty()) throw InputError("empty training set");
  tagcore::GradientWorkspace workspace(model.parameters().size());
  std::vector<const tagcore::Sentence*> lot;
  const std::int64_t steps = StepsPerEpoch(sentences.size(), privacy.lot_size);
  double loss = 0.0;
  std::size_t seen = 0;
  for (std::int64_t s = 0; s < steps; ++s) {
    lot.clear();
    for (std::size_t i :
         SamplePoissonLot(sentences.size(), privacy.sampling_rate, rng)) {
      lot.push_back(&sentences[i]);
    }
    const DpStepStats stats =
        DpSgdStep(model, lot, privacy.clip_bound, privacy.sigma,
                  privacy.lot_size, learning_rate, rng, workspace);
    loss += stats.mean_loss * static_cast<double>(stats.lot_size);
    seen += stats.lot_size;
  }
  return seen == 0 ? 0.0 : loss / static_cast<double>(seen);
}

}  // namespace fedner::dpcore
