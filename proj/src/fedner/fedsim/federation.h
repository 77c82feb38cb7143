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

#ifndef FEDNER_FEDSIM_FEDERATION_H_
#define FEDNER_FEDSIM_FEDERATION_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fedner/corpus/split.h"
#include "fedner/dpcore/dp_sgd.h"
#include "fedner/fedsim/run_log.h"
#include "fedner/tagcore/metrics.h"
#include "fedner/tagcore/parameter_vector.h"
#include "fedner/tagcore/tagger_model.h"

namespace fedner::fedsim {

// FNV-1a of a silo id; the default key for a silo's random streams.
std::uint64_t SiloStreamKey(const std::string& silo_id);

struct SiloConfig {
  std::string silo_id;
  // Owned by the caller and read only by this silo.
  const corpus::SiloDataset* dataset = nullptr;
  // Present iff the silo trains with DP-SGD.
  std::optional<dpcore::PrivacySpec> privacy;
  int local_epochs = 1;
  double learning_rate = 0.01;
  int batch_size = 1;
  // Keys the silo's training and noise streams. Defaults to
  // SiloStreamKey(silo_id) when unset.
  std::optional<std::uint64_t> stream_key;

  std::uint64_t StreamKey() const;
  // Throws ConfigError on invalid settings.
  void Validate() const;
};

// The server's view of a silo. Everything crossing this boundary is a
// parameter vector or a score the silo computes on its own data.
class SiloClient {
 public:
  virtual ~SiloClient() = default;
  virtual const std::string& id() const = 0;
  // Number of training examples; only used for size-weighted averaging.
  virtual std::size_t train_size() const = 0;

  struct Update {
    tagcore::ParameterVector parameters;
    double train_loss = 0.0;
  };
  // Starts from a copy of `global`, trains locally and returns the full
  // post-training parameter vector to ship.
  virtual Update TrainRound(const tagcore::ParameterVector& global, int round,
                            std::uint64_t master_seed) = 0;
  virtual tagcore::MetricReport EvaluateTest(
      const tagcore::ParameterVector& global) const = 0;
};

// The honest silo: plain SGD epochs or DP-SGD epochs on its own train split.
class LocalSilo : public SiloClient {
 public:
  LocalSilo(tagcore::ModelShape shape, SiloConfig config);

  const std::string& id() const override { return config_.silo_id; }
  std::size_t train_size() const override;
  Update TrainRound(const tagcore::ParameterVector& global, int round,
                    std::uint64_t master_seed) override;
  tagcore::MetricReport EvaluateTest(
      const tagcore::ParameterVector& global) const override;

  const SiloConfig& config() const { return config_; }
  const tagcore::ModelShape& shape() const { return shape_; }

 private:
  tagcore::ModelShape shape_;
  SiloConfig config_;
};

// Local training of one epoch, shared by federated rounds and individual
// training. `epoch_index` selects the random stream, so round r / local
// epoch e of a federation uses the same stream as epoch r * E + e of
// centralized training.
double TrainLocalEpoch(tagcore::TaggerModel& model, const SiloConfig& silo,
                       std::int64_t epoch_index, std::uint64_t master_seed);

struct ShippedUpdate {
  std::string silo_id;
  tagcore::ParameterVector parameters;
  double weight = 1.0;
};

// Running elementwise mean in the given order; exact for identical inputs.
// Throws ProtocolError on an empty list or mixed layouts.
tagcore::ParameterVector Aggregate(std::span<const tagcore::ParameterVector> updates);
// Weighted running mean. Weights must be positive.
tagcore::ParameterVector AggregateWeighted(
    std::span<const tagcore::ParameterVector> updates,
    std::span<const double> weights);
// Sorts by silo id, then averages (uniformly unless `size_weighted`).
tagcore::ParameterVector AggregateBySiloId(std::vector<ShippedUpdate> updates,
                                           bool size_weighted);

struct FederationConfig {
  int rounds = 20;
  bool size_weighted = false;
  bool parallel_silos = false;
  std::uint64_t master_seed = 0;
};

struct RoundResult {
  tagcore::ParameterVector global;
  RoundRecord record;
};

// One FedAvg round. A silo that throws is excluded from the aggregate and
// logged as failed; a round in which every silo fails is a ProtocolError.
RoundResult RunRound(const tagcore::ParameterVector& global,
                     std::span<SiloClient* const> silos, int round_index,
                     const FederationConfig& config);

struct FederationResult {
  tagcore::ParameterVector global;
  FederationRunLog log;
};

// Runs `config.rounds` rounds from `initial` and scores the final model on
// each silo's test split. Silo ids must be unique.
FederationResult RunFederation(const tagcore::ParameterVector& initial,
                               std::span<SiloClient* const> silos,
                               const FederationConfig& config,
                               const std::string& config_fingerprint = "");

// Convenience: builds LocalSilos from configs.
std::vector<std::unique_ptr<LocalSilo>> MakeLocalSilos(
    const tagcore::ModelShape& shape, const std::vector<SiloConfig>& configs);
std::vector<SiloClient*> ClientPointers(
    const std::vector<std::unique_ptr<LocalSilo>>& silos);

// Trains one silo alone for `epochs` epochs from `initial`.
tagcore::ParameterVector TrainIndividually(const tagcore::ModelShape& shape,
                                           const tagcore::ParameterVector& initial,
                                           const SiloConfig& silo, int epochs,
                                           std::uint64_t master_seed);

// delta[r][c] = 100 * (F1_full(c) - F1_without_r(c)) in mean-F1 points;
// the diagonal is 0 by definition.
struct LeaveOneOutMatrix {
  std::vector<std::string> silo_ids;
  std::vector<std::vector<double>> delta;
  std::map<std::string, tagcore::MetricReport> full_metrics;
};

// Requires at least three silos (ConfigError otherwise).
LeaveOneOutMatrix LeaveOneOut(const tagcore::ModelShape& shape,
                              const tagcore::ParameterVector& initial,
                              const std::vector<SiloConfig>& silos,
                              const FederationConfig& config);

}  // namespace fedner::fedsim

#endif  // FEDNER_FEDSIM_FEDERATION_H_
