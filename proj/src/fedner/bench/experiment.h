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

#ifndef FEDNER_BENCH_EXPERIMENT_H_
#define FEDNER_BENCH_EXPERIMENT_H_

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "fedner/bench/config.h"
#include "fedner/corpus/generator.h"
#include "fedner/dpcore/dp_sgd.h"
#include "fedner/fedsim/federation.h"
#include "fedner/persona/fine_tune.h"
#include "fedner/tagcore/metrics.h"
#include "fedner/tagcore/parameter_vector.h"
#include "fedner/tagcore/tagger_model.h"

namespace fedner::bench {

// Outcome of one scenario arm over a set of silos.
struct ArmResult {
  Scenario scenario = Scenario::kIndividual;
  std::optional<double> epsilon;  // set for private arms
  SiloFilter filter;
  std::vector<std::string> silo_ids;  // participating silos, corpus order
  std::map<std::string, tagcore::MetricReport> test_metrics;
  // Federated arms only.
  std::optional<fedsim::FederationResult> federation;
  std::map<std::string, dpcore::PrivacySpec> privacy;
  // Fine-tuned arms only, in silo_ids order.
  std::vector<persona::PersonalizedModel> personalized;
  // Individual arm only, in silo_ids order.
  std::vector<tagcore::ParameterVector> individual_models;

  double MeanF1() const;  // mean over silos of mean_f1, 0..1 scale
};

// Shared state of every arm of one experiment: the generated corpus, its
// splits, and the initial model. Arm results are cached, so fine-tuned arms
// reuse the federation of their base arm.
class Experiment {
 public:
  // Validates the config and generates the corpus.
  explicit Experiment(ExperimentConfig config);

  const ExperimentConfig& config() const { return config_; }
  const corpus::Corpus& corpus() const { return corpus_; }
  const tagcore::ModelShape& shape() const { return shape_; }
  const tagcore::ParameterVector& initial() const { return initial_; }

  // Corpus-order ids of the silos admitted by `filter`.
  std::vector<std::string> SelectSilos(const SiloFilter& filter) const;
  // The five smallest silos by total size (ties by corpus order), corpus
  // order.
  std::vector<std::string> SmallSilos() const;
  std::vector<std::string> LargeSilos() const;

  // Per-silo training configuration; private when `epsilon` is set. Throws
  // CalibrationError when a silo cannot reach `epsilon`.
  std::vector<fedsim::SiloConfig> SiloConfigs(
      const std::vector<std::string>& ids, std::optional<double> epsilon) const;
  fedsim::FederationConfig Federation() const;
  // Identifies the federation that produced a transcript.
  std::string RunFingerprint(Scenario base, const SiloFilter& filter,
                             std::optional<double> epsilon) const;

  // Runs (or returns the cached) arm. `epsilon` is ignored for non-private
  // scenarios and defaults to the config's epsilon for private ones.
  const ArmResult& Run(Scenario scenario, const SiloFilter& filter,
                       std::optional<double> epsilon = std::nullopt);

 private:
  ArmResult Compute(Scenario scenario, const SiloFilter& filter,
                    std::optional<double> epsilon);
  std::string CacheKey(Scenario scenario, const SiloFilter& filter,
                       std::optional<double> epsilon) const;

  ExperimentConfig config_;
  corpus::Corpus corpus_;
  tagcore::ModelShape shape_;
  tagcore::ParameterVector initial_;
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<const ArmResult>> cache_;
};

}  // namespace fedner::bench

#endif  // FEDNER_BENCH_EXPERIMENT_H_
