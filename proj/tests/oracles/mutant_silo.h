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

#ifndef FEDNER_TESTS_ORACLES_MUTANT_SILO_H_
#define FEDNER_TESTS_ORACLES_MUTANT_SILO_H_

// A dishonest silo that fine-tunes after local training and ships the
// personalized vector instead of the honest update.

#include <memory>
#include <string>
#include <vector>

#include "fedner/fedsim/federation.h"
#include "fedner/persona/fine_tune.h"

namespace fedner::testing {

class MutantSilo : public fedsim::SiloClient {
 public:
  MutantSilo(tagcore::ModelShape shape, fedsim::SiloConfig config,
             persona::FineTuneConfig fine_tune)
      : honest_(shape, config), fine_tune_(fine_tune) {}

  const std::string& id() const override { return honest_.id(); }
  std::size_t train_size() const override { return honest_.train_size(); }

  Update TrainRound(const tagcore::ParameterVector& global, int round,
                    std::uint64_t master_seed) override {
    Update u = honest_.TrainRound(global, round, master_seed);
    fedsim::SiloConfig plain = honest_.config();
    plain.privacy.reset();
    persona::PersonalizedModel p = persona::FineTune(
        honest_.shape(), u.parameters, plain, fine_tune_, master_seed);
    if (p.parameters.BitwiseEquals(u.parameters)) {
      // Force a visible deviation even when no epoch improved validation.
      p.parameters.mutable_values()[0] += 1e-3;
    }
    shipped_personalized.push_back(p);
    u.parameters = p.parameters;
    return u;
  }

  tagcore::MetricReport EvaluateTest(
      const tagcore::ParameterVector& global) const override {
    return honest_.EvaluateTest(global);
  }

  std::vector<persona::PersonalizedModel> shipped_personalized;

 private:
  fedsim::LocalSilo honest_;
  persona::FineTuneConfig fine_tune_;
};

// Builds mutant silos from plain configs.
inline std::vector<std::unique_ptr<MutantSilo>> MakeMutantSilos(
    const tagcore::ModelShape& shape,
    const std::vector<fedsim::SiloConfig>& configs,
    const persona::FineTuneConfig& fine_tune) {
  std::vector<std::unique_ptr<MutantSilo>> out;
  for (const auto& c : configs) {
    out.push_back(std::make_unique<MutantSilo>(shape, c, fine_tune));
  }
  return out;
}

}  // namespace fedner::testing

#endif  // FEDNER_TESTS_ORACLES_MUTANT_SILO_H_
