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

#ifndef FEDNER_BENCH_CONFIG_H_
#define FEDNER_BENCH_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fedner/corpus/generator.h"
#include "fedner/persona/fine_tune.h"

namespace fedner::bench {

enum class Scenario { kIndividual, kFl, kFtFl, kDpFl, kFtDpFl };

inline constexpr Scenario kAllScenarios[] = {
    Scenario::kIndividual, Scenario::kFl, Scenario::kFtFl, Scenario::kDpFl,
    Scenario::kFtDpFl};

// "individual", "fl", "ft-fl", "dp-fl", "ft-dp-fl".
const char* ScenarioName(Scenario s);
// Throws ConfigError for unknown names.
Scenario ParseScenario(const std::string& name);
bool IsPrivate(Scenario s);
bool IsFineTuned(Scenario s);
bool IsFederated(Scenario s);
// The scenario whose federation a fine-tuned scenario starts from.
Scenario BaseScenario(Scenario s);

// Which silos take part: every silo, the five smallest, or all but one.
struct SiloFilter {
  enum class Kind { kAll, kSmallOnly, kLeaveOut };
  Kind kind = Kind::kAll;
  std::string left_out;  // kLeaveOut only

  static SiloFilter All() { return {}; }
  static SiloFilter SmallOnly() { return {Kind::kSmallOnly, ""}; }
  static SiloFilter LeaveOut(std::string id) {
    return {Kind::kLeaveOut, std::move(id)};
  }
  // "all", "small-only" or "leave-out:<id>". Throws ConfigError.
  static SiloFilter Parse(const std::string& text);
  std::string ToString() const;

  friend bool operator==(const SiloFilter&, const SiloFilter&) = default;
};

// Number of silos counted as small (and as large) on the default ladder.
inline constexpr std::size_t kSmallSiloCount = 5;

struct ModelSettings {
  int embedding_dim = 16;
  int hidden_dim = 32;
  int window_radius = 2;
  // Accepted for config compatibility; the tagger has no dropout layer and
  // ignores this value.
  double dropout = 0.4;
};

struct FederationSettings {
  int rounds = 20;
  int local_epochs = 1;
  double learning_rate = 0.01;
  int batch_size = 1;
  bool size_weighted = false;
  bool parallel_silos = false;
};

struct PrivacySettings {
  double delta = 1e-5;
  double clip_bound = 0.5;
  int lot_size = 8;
  // Step size of DP-SGD silos. Clipping and the 1/L normalisation shrink
  // each sentence's contribution relative to batch-1 SGD, so private silos
  // use their own rate.
  double learning_rate = 0.1;
  int max_order = 64;
  double sigma_min = 0.3;
  double sigma_max = 500.0;
};

struct ExperimentConfig {
  corpus::CorpusSpec corpus = corpus::CorpusSpec::Default();
  ModelSettings model;
  FederationSettings federation;
  PrivacySettings privacy;
  // 20 epochs, patience 3, step size 0.1.
  persona::FineTuneConfig fine_tune = {20, 3, 0.1};
  Scenario scenario = Scenario::kFl;
  // Target epsilon of private scenarios. Unset means kDefaultEpsilon.
  std::optional<double> epsilon;
  std::uint64_t master_seed = 42;
  SiloFilter silo_filter;
  std::vector<double> epsilon_grid = {0.5, 1.0, 2.0, 4.0, 8.0};
  bool parallel_arms = false;

  static constexpr double kDefaultEpsilon = 2.0;

  double EffectiveEpsilon() const {
    return epsilon.value_or(kDefaultEpsilon);
  }

  // Throws ConfigError with the offending field named.
  void Validate() const;
};

// Schema (every key optional; unknown keys are rejected):
//   master_seed, scenario, epsilon, silo_filter, epsilon_grid, parallel_arms,
//   corpus {seed, scale, adverse_events, modifiers, distractor_terms,
//           filler_words, entities_per_sentence, term_entity_probability,
//           skew_min, skew_max, split_ratios {train, validation, tune, test},
//           silos [{id, sentences, vaccine_names, skew_exponent}]},
//   model {embedding_dim, hidden_dim, window_radius, dropout},
//   federation {rounds, local_epochs, learning_rate, batch_size,
//               size_weighted, parallel_silos},
//   privacy {delta, clip_bound, lot_size, learning_rate, max_order,
//            sigma_min, sigma_max},
//   fine_tune {max_epochs, patience, learning_rate}
ExperimentConfig ConfigFromJson(const std::string& text);
std::string ConfigToJson(const ExperimentConfig& config);
// Reads a config file, or the config embedded in a run manifest.
ExperimentConfig LoadConfig(const std::filesystem::path& path);

// SHA-256 of the canonical JSON form.
std::string ConfigFingerprint(const ExperimentConfig& config);

}  // namespace fedner::bench

#endif  // FEDNER_BENCH_CONFIG_H_
