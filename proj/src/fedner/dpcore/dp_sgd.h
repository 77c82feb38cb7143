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

#ifndef FEDNER_DPCORE_DP_SGD_H_
#define FEDNER_DPCORE_DP_SGD_H_

#include <cstdint>
#include <span>
#include <vector>

#include "fedner/common/rng.h"
#include "fedner/dpcore/calibration.h"
#include "fedner/tagcore/parameter_vector.h"
#include "fedner/tagcore/sentence.h"
#include "fedner/tagcore/tagger_model.h"
#include "fedner/tagcore/trainer.h"

namespace fedner::dpcore {

// Privacy parameters of one silo for a whole federation run.
struct PrivacySpec {
  double epsilon = 2.0;
  double delta = 1e-5;
  double clip_bound = 1.0;
  int lot_size = 256;
  double sampling_rate = 1.0;  // min(1, lot_size / N)
  std::int64_t steps = 0;      // rounds * local_epochs * ceil(N / lot_size)
  double sigma = 0.0;          // calibrated noise multiplier
  double achieved_epsilon = 0.0;
};

// Fills q, T and the calibrated sigma for a silo with `train_size` examples.
// Throws ConfigError on invalid inputs and CalibrationError when the target
// is unreachable.
PrivacySpec MakePrivacySpec(double epsilon, double delta, double clip_bound,
                            int lot_size, std::size_t train_size, int rounds,
                            int local_epochs,
                            const CalibrationOptions& options = {});

// Scales `grad` in place by min(1, C / ||grad||). Returns the scale applied.
// Throws ConfigError for C <= 0 and InputError for non-finite components.
double ClipInPlace(std::span<double> grad, double clip_bound);

tagcore::ParameterVector Clip(const tagcore::ParameterVector& grad,
                              double clip_bound);

struct DpStepStats {
  double mean_loss = 0.0;
  std::size_t lot_size = 0;
  std::size_t clipped = 0;
};

// One DP-SGD step:
//   params -= lr * (sum_i clip(g_i, C) + N(0, sigma^2 C^2 I)) / L
// where L is the expected lot size, not the realised one. sigma == 0 draws
// no noise. An empty lot still applies the noise.
DpStepStats DpSgdStep(tagcore::TaggerModel& model,
                      std::span<const tagcore::Sentence* const> lot,
                      double clip_bound, double sigma, int lot_size,
                      double learning_rate, Rng& rng,
                      tagcore::GradientWorkspace& workspace);

// Each sentence joins the lot independently with probability q.
std::vector<std::size_t> SamplePoissonLot(std::size_t n, double q, Rng& rng);

// ceil(N / L) DP-SGD steps over Poisson-sampled lots. Returns the mean
// per-sentence loss over all sampled sentences (0 if none were sampled).
double DpTrainEpoch(tagcore::TaggerModel& model,
                    std::span<const tagcore::Sentence> sentences,
                    const PrivacySpec& privacy, double learning_rate, Rng& rng);

std::int64_t StepsPerEpoch(std::size_t train_size, int lot_size);

}  // namespace fedner::dpcore

#endif  // FEDNER_DPCORE_DP_SGD_H_
