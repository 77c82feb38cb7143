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

#include "fedner/persona/fine_tune.h"

#include "fedner/common/error.h"
#include "fedner/common/rng.h"
#include "fedner/tagcore/metrics.h"
#include "fedner/tagcore/trainer.h"

namespace fedner::persona {

void FineTuneConfig::Validate() const {
  if (max_epochs < 0) throw ConfigError("fine-tune max_epochs must be >= 0");
  if (patience < 1) throw ConfigError("fine-tune patience must be >= 1");
  if (max_epochs > 0 && patience > max_epochs) {
    throw ConfigError("fine-tune patience must not exceed max_epochs");
  }
  if (!(learning_rate > 0.0)) {
    throw ConfigError("fine-tune learning_rate must be > 0");
  }
}

PersonalizedModel FineTune(const tagcore::ModelShape& shape,
                           const tagcore::ParameterVector& global_copy,
                           const fedsim::SiloConfig& silo,
                           const FineTuneConfig& config,
                           std::uint64_t master_seed) {
  config.Validate();
  silo.Validate();
  if (silo.dataset->validation().empty()) {
    throw ConfigError("silo '" + silo.silo_id + "' has no validation split");
  }
  PersonalizedModel out;
  out.silo_id = silo.silo_id;
  out.base_digest_hex = global_copy.DigestHex();
  out.parameters = global_copy;
  if (config.max_epochs == 0) return out;

  tagcore::TaggerModel model(shape, global_copy);
  const auto& validation = silo.dataset->validation();
  out.best_validation_f1 = tagcore::Evaluate(model, validation).mean_f1;
  out.validation_history.push_back(out.best_validation_f1);

  int since_best = 0;
  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    Rng rng = MakeRng(master_seed, StreamTag::kFineTune,
                      {silo.StreamKey(), static_cast<std::uint64_t>(epoch)});
    tagcore::TrainEpoch(model, silo.dataset->train(), config.learning_rate,
                        silo.batch_size, rng);
    const double f1 = tagcore::Evaluate(model, validation).mean_f1;
    out.validation_history.push_back(f1);
    if (f1 > out.best_validation_f1) {
      out.best_validation_f1 = f1;
      out.best_epoch = epoch;
      out.parameters = model.parameters();
      since_best = 0;
    } else if (++since_best >= config.patience) {
      break;
    }
  }
  return out;
}

}  // namespace fedner::persona
