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

#ifndef FEDNER_FEDSIM_RUN_LOG_H_
#define FEDNER_FEDSIM_RUN_LOG_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "fedner/tagcore/metrics.h"

namespace fedner::fedsim {

// What one silo shipped (or failed to ship) in one round.
struct UpdateRecord {
  int round = 0;
  std::string silo_id;
  std::string digest_hex;  // empty when the silo failed
  double train_loss = 0.0;
  double wall_seconds = 0.0;
  std::string timestamp;  // UTC, ISO-8601
  bool failed = false;
  std::string error;
};

struct RoundRecord {
  int round = 0;
  std::string global_digest_hex;  // digest of the aggregate after this round
  std::vector<UpdateRecord> updates;  // sorted by silo id
};

struct FederationRunLog {
  std::string config_fingerprint;
  std::string initial_digest_hex;
  std::vector<RoundRecord> rounds;
  // Final global model scored on each silo's own test split.
  std::map<std::string, tagcore::MetricReport> final_metrics;

  std::string FinalDigestHex() const;
  // Every shipped digest, round-major then silo order.
  std::vector<std::string> ShippedDigests() const;
};

// Line-delimited JSON. Each shipped update is one line
//   {"record":"update","round":r,"silo_id":..,"digest":..,"loss":..,
//    "timestamp":..,"wall_seconds":..}
// failed silos carry "failed":true and "error" instead of a digest, and each
// round closes with {"record":"global","round":r,"digest":..}.
void WriteRunLogJsonl(const FederationRunLog& log, std::ostream& out);
void WriteRunLogJsonl(const FederationRunLog& log,
                      const std::filesystem::path& path);
// Reads back the update and global records (metrics are not part of the log).
FederationRunLog ReadRunLogJsonl(std::istream& in);

std::string UtcTimestamp();

}  // namespace fedner::fedsim

#endif  // FEDNER_FEDSIM_RUN_LOG_H_
