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

#ifndef FEDNER_PERSONA_FINE_TUNE_H_
#define FEDNER_PERSONA_FINE_TUNE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "fedner/fedsim/federation.h"
#include "fedner/tagcore/parameter_vector.h"
#include "fedner/tagcore/tagger_model.h"

namespace fedner::persona {

struct FineTuneConfig {
  int max_epochs = 20;
  int patience = 3;
  double learning_rate = 0.01;

  // Throws ConfigError unless max_epochs >= 0, 1 <= patience and
  // patience <= max_epochs (when max_epochs > 0), learning_rate > 0.
  void Validate() const;
};

// A silo's private model. Never shipped to the server.
struct PersonalizedModel {
  std::string silo_id;
  std::string base_digest_hex;  // the global model fine-tuning started from
  tagcore::ParameterVector parameters;
  int best_epoch = 0;  // 0 means the unmodified global copy
  double best_validation_f1 = 0.0;
  std::vector<double> validation_history;  // index = epoch, entry 0 = start
};

// Noise-free epochs on the silo's train split starting from `global_copy`.
// After each epoch the validation mean F1 is measured; the best checkpoint
// (strict improvement, earliest wins ties) is returned. Stops after
// `patience` consecutive epochs without improvement. Throws ConfigError when
// the validation split is empty.
PersonalizedModel FineTune(const tagcore::ModelShape& shape,
                           const tagcore::ParameterVector& global_copy,
                           const fedsim::SiloConfig& silo,
                           const FineTuneConfig& config,
                           std::uint64_t master_seed);

}  // namespace fedner::persona

#endif  // FEDNER_PERSONA_FINE_TUNE_H_
