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

#include "fedner/bench/experiment.h"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "fedner/common/error.h"
#include "fedner/common/rng.h"

namespace fedner::bench {
namespace {

tagcore::ModelShape MakeShape(const ExperimentConfig& cfg,
                              const corpus::Corpus& corpus) {
  tagcore::ModelShape shape;
  shape.vocab_size = corpus.vocab.size();
  shape.embedding_dim = cfg.model.embedding_dim;
  shape.hidden_dim = cfg.model.hidden_dim;
  shape.window_radius = cfg.model.window_radius;
  shape.Validate();
  return shape;
}

std::string WithContext(Scenario s, const std::exception& e) {
  return std::string(ScenarioName(s)) + ": " + e.what();
}

}  // namespace

double ArmResult::MeanF1() const {
  if (test_metrics.empty()) return 0.0;
  double total = 0.0;
  for (const auto& [id, report] : test_metrics) total += report.mean_f1;
  return total / static_cast<double>(test_metrics.size());
}

Experiment::Experiment(ExperimentConfig config)
    : config_(std::move(config)),
      corpus_((config_.Validate(), corpus::Generate(config_.corpus))),
      shape_(MakeShape(config_, corpus_)) {
  Rng rng = MakeRng(config_.master_seed, StreamTag::kModelInit, {});
  initial_ = tagcore::TaggerModel::Initialize(shape_, rng).parameters();
}

std::vector<std::string> Experiment::SmallSilos() const {
  std::vector<std::size_t> order(corpus_.silos.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return corpus_.silos[a].TotalSentences() < corpus_.silos[b].TotalSentences();
  });
  order.resize(std::min(order.size(), kSmallSiloCount));
  std::sort(order.begin(), order.end());
  std::vector<std::string> out;
  for (std::size_t i : order) out.push_back(corpus_.silos[i].silo_id);
  return out;
}

std::vector<std::string> Experiment::LargeSilos() const {
  const std::vector<std::string> small = SmallSilos();
  std::vector<std::string> out;
  for (const auto& s : corpus_.silos) {
    if (std::find(small.begin(), small.end(), s.silo_id) == small.end()) {
      out.push_back(s.silo_id);
    }
  }
  return out;
}

std::vector<std::string> Experiment::SelectSilos(const SiloFilter& filter) const {
  std::vector<std::string> out;
  switch (filter.kind) {
    case SiloFilter::Kind::kAll:
      for (const auto& s : corpus_.silos) out.push_back(s.silo_id);
      break;
    case SiloFilter::Kind::kSmallOnly:
      out = SmallSilos();
      break;
    case SiloFilter::Kind::kLeaveOut:
      corpus_.Silo(filter.left_out);  // throws for unknown ids
      for (const auto& s : corpus_.silos) {
        if (s.silo_id != filter.left_out) out.push_back(s.silo_id);
      }
      break;
  }
  if (out.empty()) throw ConfigError("silo filter selects no silos");
  return out;
}

std::vector<fedsim::SiloConfig> Experiment::SiloConfigs(
    const std::vector<std::string>& ids, std::optional<double> epsilon) const {
  dpcore::CalibrationOptions calibration;
  calibration.sigma_min = config_.privacy.sigma_min;
  calibration.sigma_max = config_.privacy.sigma_max;
  calibration.accountant.max_order = config_.privacy.max_order;
  std::vector<fedsim::SiloConfig> out;
  for (const std::string& id : ids) {
    fedsim::SiloConfig sc;
    sc.silo_id = id;
    sc.dataset = &corpus_.Silo(id);
    sc.local_epochs = config_.federation.local_epochs;
    sc.learning_rate = config_.federation.learning_rate;
    sc.batch_size = config_.federation.batch_size;
    if (epsilon) {
      sc.learning_rate = config_.privacy.learning_rate;
      try {
        sc.privacy = dpcore::MakePrivacySpec(
            *epsilon, config_.privacy.delta, config_.privacy.clip_bound,
            config_.privacy.lot_size, sc.dataset->train().size(),
            config_.federation.rounds, config_.federation.local_epochs,
            calibration);
      } catch (const CalibrationError& e) {
        throw CalibrationError("silo '" + id + "': " + e.what(),
                               e.feasible_min(), e.feasible_max());
      }
    }
    out.push_back(std::move(sc));
  }
  return out;
}

fedsim::FederationConfig Experiment::Federation() const {
  fedsim::FederationConfig fc;
  fc.rounds = config_.federation.rounds;
  fc.size_weighted = config_.federation.size_weighted;
  fc.parallel_silos = config_.federation.parallel_silos;
  fc.master_seed = config_.master_seed;
  return fc;
}

std::string Experiment::RunFingerprint(Scenario base, const SiloFilter& filter,
                                       std::optional<double> epsilon) const {
  ExperimentConfig c = config_;
  c.scenario = base;
  c.silo_filter = filter;
  c.epsilon = IsPrivate(base) ? epsilon : std::nullopt;
  c.fine_tune = persona::FineTuneConfig{};
  c.epsilon_grid.clear();
  c.parallel_arms = false;
  return ConfigFingerprint(c);
}

std::string Experiment::CacheKey(Scenario scenario, const SiloFilter& filter,
                                 std::optional<double> epsilon) const {
  std::ostringstream key;
  key.precision(17);
  key << ScenarioName(scenario) << '|' << filter.ToString();
  if (epsilon) key << '|' << *epsilon;
  return key.str();
}

const ArmResult& Experiment::Run(Scenario scenario, const SiloFilter& filter,
                                 std::optional<double> epsilon) {
  if (IsPrivate(scenario)) {
    if (!epsilon) epsilon = config_.EffectiveEpsilon();
  } else {
    epsilon.reset();
  }
  const std::string key = CacheKey(scenario, filter, epsilon);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return *it->second;
  }
  auto result = std::make_shared<const ArmResult>(Compute(scenario, filter, epsilon));
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = cache_.emplace(key, std::move(result));
  return *it->second;
}

ArmResult Experiment::Compute(Scenario scenario, const SiloFilter& filter,
                              std::optional<double> epsilon) {
  ArmResult out;
  out.scenario = scenario;
  out.epsilon = epsilon;
  out.filter = filter;
  out.silo_ids = SelectSilos(filter);
  try {
    if (scenario == Scenario::kIndividual) {
      const auto silos = SiloConfigs(out.silo_ids, std::nullopt);
      const int epochs =
          config_.federation.rounds * config_.federation.local_epochs;
      for (const fedsim::SiloConfig& sc : silos) {
        tagcore::ParameterVector p = fedsim::TrainIndividually(
            shape_, initial_, sc, epochs, config_.master_seed);
        out.test_metrics[sc.silo_id] =
            tagcore::Evaluate(tagcore::TaggerModel(shape_, p), sc.dataset->test());
        out.individual_models.push_back(std::move(p));
      }
      return out;
    }
    if (IsFineTuned(scenario)) {
      const ArmResult& base = Run(BaseScenario(scenario), filter, epsilon);
      out.federation = base.federation;
      out.privacy = base.privacy;
      // Fine-tuning is plain local training on each silo's own data.
      const auto silos = SiloConfigs(out.silo_ids, std::nullopt);
      for (const fedsim::SiloConfig& sc : silos) {
        persona::PersonalizedModel pm =
            persona::FineTune(shape_, base.federation->global, sc,
                              config_.fine_tune, config_.master_seed);
        out.test_metrics[sc.silo_id] = tagcore::Evaluate(
            tagcore::TaggerModel(shape_, pm.parameters), sc.dataset->test());
        out.personalized.push_back(std::move(pm));
      }
      return out;
    }
    const auto silos = SiloConfigs(out.silo_ids, epsilon);
    for (const fedsim::SiloConfig& sc : silos) {
      if (sc.privacy) out.privacy[sc.silo_id] = *sc.privacy;
    }
    auto clients = fedsim::MakeLocalSilos(shape_, silos);
    auto pointers = fedsim::ClientPointers(clients);
    out.federation = fedsim::RunFederation(
        initial_, pointers, Federation(),
        RunFingerprint(scenario, filter, epsilon));
    out.test_metrics = out.federation->log.final_metrics;
    return out;
  } catch (const ConfigError& e) {
    throw ConfigError(WithContext(scenario, e));
  } catch (const CalibrationError& e) {
    throw CalibrationError(WithContext(scenario, e), e.feasible_min(),
                           e.feasible_max());
  } catch (const NumericError& e) {
    throw NumericError(WithContext(scenario, e));
  } catch (const ProtocolError& e) {
    throw ProtocolError(WithContext(scenario, e));
  } catch (const InputError& e) {
    throw InputError(WithContext(scenario, e));
  }
}

}  // namespace fedner::bench
