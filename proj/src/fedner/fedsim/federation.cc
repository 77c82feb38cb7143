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

#include "fedner/fedsim/federation.h"

#include <algorithm>
#include <chrono>
#include <future>
#include <set>

#include "fedner/common/error.h"
#include "fedner/common/rng.h"
#include "fedner/tagcore/trainer.h"

namespace fedner::fedsim {

using tagcore::ParameterVector;

std::uint64_t SiloStreamKey(const std::string& silo_id) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : silo_id) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t SiloConfig::StreamKey() const {
  return stream_key ? *stream_key : SiloStreamKey(silo_id);
}

void SiloConfig::Validate() const {
  if (silo_id.empty()) throw ConfigError("silo id must be non-empty");
  if (dataset == nullptr) {
    throw ConfigError("silo '" + silo_id + "' has no dataset");
  }
  if (local_epochs < 1) {
    throw ConfigError("silo '" + silo_id + "': local_epochs must be >= 1");
  }
  if (!(learning_rate > 0.0)) {
    throw ConfigError("silo '" + silo_id + "': learning_rate must be > 0");
  }
  if (batch_size < 1) {
    throw ConfigError("silo '" + silo_id + "': batch_size must be >= 1");
  }
  if (dataset->train().empty()) {
    throw ConfigError("silo '" + silo_id + "' has no training sentences");
  }
}

double TrainLocalEpoch(tagcore::TaggerModel& model, const SiloConfig& silo,
                       std::int64_t epoch_index, std::uint64_t master_seed) {
  const auto epoch = static_cast<std::uint64_t>(epoch_index);
  if (silo.privacy) {
    Rng rng = MakeRng(master_seed, StreamTag::kDpNoise, {silo.StreamKey(), epoch});
    return dpcore::DpTrainEpoch(model, silo.dataset->train(), *silo.privacy,
                                silo.learning_rate, rng);
  }
  Rng rng =
      MakeRng(master_seed, StreamTag::kLocalTraining, {silo.StreamKey(), epoch});
  return tagcore::TrainEpoch(model, silo.dataset->train(), silo.learning_rate,
                             silo.batch_size, rng);
}

LocalSilo::LocalSilo(tagcore::ModelShape shape, SiloConfig config)
    : shape_(shape), config_(std::move(config)) {
  config_.Validate();
}

std::size_t LocalSilo::train_size() const {
  return config_.dataset->train().size();
}

SiloClient::Update LocalSilo::TrainRound(const ParameterVector& global,
                                         int round, std::uint64_t master_seed) {
  tagcore::TaggerModel model(shape_, global);
  double loss = 0.0;
  for (int e = 0; e < config_.local_epochs; ++e) {
    const std::int64_t epoch_index =
        static_cast<std::int64_t>(round) * config_.local_epochs + e;
    loss = TrainLocalEpoch(model, config_, epoch_index, master_seed);
  }
  return Update{model.parameters(), loss};
}

tagcore::MetricReport LocalSilo::EvaluateTest(
    const ParameterVector& global) const {
  const tagcore::TaggerModel model(shape_, global);
  return tagcore::Evaluate(model, config_.dataset->test());
}

ParameterVector Aggregate(std::span<const ParameterVector> updates) {
  std::vector<double> weights(updates.size(), 1.0);
  return AggregateWeighted(updates, weights);
}

ParameterVector AggregateWeighted(std::span<const ParameterVector> updates,
                                  std::span<const double> weights) {
  if (updates.empty()) throw ProtocolError("no updates to aggregate");
  if (weights.size() != updates.size()) {
    throw ProtocolError("one weight per update required");
  }
  ParameterVector mean = updates[0];
  if (!(weights[0] > 0.0)) throw ProtocolError("weights must be positive");
  double total = weights[0];
  std::span<double> m = mean.mutable_values();
  for (std::size_t k = 1; k < updates.size(); ++k) {
    mean.CheckCompatible(updates[k]);
    if (!(weights[k] > 0.0)) throw ProtocolError("weights must be positive");
    total += weights[k];
    const double share = weights[k] / total;
    const std::span<const double> x = updates[k].values();
    for (std::size_t i = 0; i < m.size(); ++i) m[i] += share * (x[i] - m[i]);
  }
  return mean;
}

ParameterVector AggregateBySiloId(std::vector<ShippedUpdate> updates,
                                  bool size_weighted) {
  std::sort(updates.begin(), updates.end(),
            [](const ShippedUpdate& a, const ShippedUpdate& b) {
              return a.silo_id < b.silo_id;
            });
  std::vector<ParameterVector> vectors;
  std::vector<double> weights;
  vectors.reserve(updates.size());
  for (ShippedUpdate& u : updates) {
    vectors.push_back(std::move(u.parameters));
    weights.push_back(size_weighted ? u.weight : 1.0);
  }
  return AggregateWeighted(vectors, weights);
}

namespace {

struct SiloOutcome {
  std::optional<SiloClient::Update> update;
  std::string error;
  double seconds = 0.0;
  std::string timestamp;
};

SiloOutcome TrainOne(SiloClient& silo, const ParameterVector& global,
                     int round, std::uint64_t master_seed) {
  SiloOutcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    out.update = silo.TrainRound(global, round, master_seed);
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start)
                    .count();
  out.timestamp = UtcTimestamp();
  return out;
}

void CheckUniqueIds(std::span<SiloClient* const> silos) {
  std::set<std::string> ids;
  for (const SiloClient* s : silos) {
    if (!ids.insert(s->id()).second) {
      throw ConfigError("duplicate silo id '" + s->id() + "'");
    }
  }
}

}  // namespace

RoundResult RunRound(const ParameterVector& global,
                     std::span<SiloClient* const> silos, int round_index,
                     const FederationConfig& config) {
  if (silos.empty()) throw ConfigError("federation has no silos");
  std::vector<SiloOutcome> outcomes(silos.size());
  if (config.parallel_silos && silos.size() > 1) {
    std::vector<std::future<SiloOutcome>> futures;
    futures.reserve(silos.size());
    for (SiloClient* s : silos) {
      futures.push_back(std::async(std::launch::async, [&, s] {
        return TrainOne(*s, global, round_index, config.master_seed);
      }));
    }
    for (std::size_t i = 0; i < silos.size(); ++i) outcomes[i] = futures[i].get();
  } else {
    for (std::size_t i = 0; i < silos.size(); ++i) {
      outcomes[i] = TrainOne(*silos[i], global, round_index, config.master_seed);
    }
  }

  RoundResult result;
  result.record.round = round_index;
  std::vector<ShippedUpdate> shipped;
  for (std::size_t i = 0; i < silos.size(); ++i) {
    UpdateRecord rec;
    rec.round = round_index;
    rec.silo_id = silos[i]->id();
    rec.wall_seconds = outcomes[i].seconds;
    rec.timestamp = outcomes[i].timestamp;
    if (outcomes[i].update) {
      global.CheckCompatible(outcomes[i].update->parameters);
      rec.digest_hex = outcomes[i].update->parameters.DigestHex();
      rec.train_loss = outcomes[i].update->train_loss;
      shipped.push_back({silos[i]->id(),
                         std::move(outcomes[i].update->parameters),
                         static_cast<double>(silos[i]->train_size())});
    } else {
      rec.failed = true;
      rec.error = outcomes[i].error;
    }
    result.record.updates.push_back(std::move(rec));
  }
  std::sort(result.record.updates.begin(), result.record.updates.end(),
            [](const UpdateRecord& a, const UpdateRecord& b) {
              return a.silo_id < b.silo_id;
            });
  if (shipped.empty()) {
    throw ProtocolError("every silo failed in round " +
                        std::to_string(round_index));
  }
  result.global = AggregateBySiloId(std::move(shipped), config.size_weighted);
  result.record.global_digest_hex = result.global.DigestHex();
  return result;
}

FederationResult RunFederation(const ParameterVector& initial,
                               std::span<SiloClient* const> silos,
                               const FederationConfig& config,
                               const std::string& config_fingerprint) {
  if (config.rounds < 0) throw ConfigError("rounds must be >= 0");
  if (silos.empty()) throw ConfigError("federation has no silos");
  CheckUniqueIds(silos);
  FederationResult result;
  result.global = initial;
  result.log.config_fingerprint = config_fingerprint;
  result.log.initial_digest_hex = initial.DigestHex();
  for (int r = 0; r < config.rounds; ++r) {
    RoundResult round = RunRound(result.global, silos, r, config);
    result.global = std::move(round.global);
    result.log.rounds.push_back(std::move(round.record));
  }
  for (const SiloClient* s : silos) {
    result.log.final_metrics[s->id()] = s->EvaluateTest(result.global);
  }
  return result;
}

std::vector<std::unique_ptr<LocalSilo>> MakeLocalSilos(
    const tagcore::ModelShape& shape, const std::vector<SiloConfig>& configs) {
  std::vector<std::unique_ptr<LocalSilo>> out;
  out.reserve(configs.size());
  for (const SiloConfig& c : configs) {
    out.push_back(std::make_unique<LocalSilo>(shape, c));
  }
  return out;
}

std::vector<SiloClient*> ClientPointers(
    const std::vector<std::unique_ptr<LocalSilo>>& silos) {
  std::vector<SiloClient*> out;
  out.reserve(silos.size());
  for (const auto& s : silos) out.push_back(s.get());
  return out;
}

ParameterVector TrainIndividually(const tagcore::ModelShape& shape,
                                  const ParameterVector& initial,
                                  const SiloConfig& silo, int epochs,
                                  std::uint64_t master_seed) {
  silo.Validate();
  if (epochs < 0) throw ConfigError("epochs must be >= 0");
  tagcore::TaggerModel model(shape, initial);
  for (int e = 0; e < epochs; ++e) {
    TrainLocalEpoch(model, silo, e, master_seed);
  }
  return model.parameters();
}

LeaveOneOutMatrix LeaveOneOut(const tagcore::ModelShape& shape,
                              const ParameterVector& initial,
                              const std::vector<SiloConfig>& silos,
                              const FederationConfig& config) {
  if (silos.size() < 3) {
    throw ConfigError("leave-one-out needs a federation of at least 3 silos");
  }
  LeaveOneOutMatrix out;
  for (const SiloConfig& s : silos) out.silo_ids.push_back(s.silo_id);

  const auto full_silos = MakeLocalSilos(shape, silos);
  const auto full_ptrs = ClientPointers(full_silos);
  out.full_metrics = RunFederation(initial, full_ptrs, config).log.final_metrics;

  const std::size_t n = silos.size();
  out.delta.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<SiloConfig> remaining;
    for (std::size_t c = 0; c < n; ++c) {
      if (c != r) remaining.push_back(silos[c]);
    }
    const auto reduced = MakeLocalSilos(shape, remaining);
    const auto reduced_ptrs = ClientPointers(reduced);
    const FederationResult without = RunFederation(initial, reduced_ptrs, config);
    for (std::size_t c = 0; c < n; ++c) {
      if (c == r) continue;
      const double full = out.full_metrics.at(silos[c].silo_id).mean_f1;
      const double reduced_f1 = without.log.final_metrics.at(silos[c].silo_id).mean_f1;
      out.delta[r][c] = 100.0 * (full - reduced_f1);
    }
  }
  return out;
}

}  // namespace fedner::fedsim
