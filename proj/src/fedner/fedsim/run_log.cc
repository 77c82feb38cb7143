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

#include "fedner/fedsim/run_log.h"

#include <chrono>
#include <ctime>
#include <fstream>
#include <istream>
#include <ostream>

#include "fedner/common/error.h"
#include "json.hpp"

namespace fedner::fedsim {

using nlohmann::json;

std::string FederationRunLog::FinalDigestHex() const {
  return rounds.empty() ? initial_digest_hex : rounds.back().global_digest_hex;
}

std::vector<std::string> FederationRunLog::ShippedDigests() const {
  std::vector<std::string> out;
  for (const RoundRecord& r : rounds) {
    for (const UpdateRecord& u : r.updates) {
      if (!u.failed) out.push_back(u.digest_hex);
    }
  }
  return out;
}

std::string UtcTimestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void WriteRunLogJsonl(const FederationRunLog& log, std::ostream& out) {
  for (const RoundRecord& r : log.rounds) {
    for (const UpdateRecord& u : r.updates) {
      json j = {{"record", "update"},
                {"round", u.round},
                {"silo_id", u.silo_id},
                {"timestamp", u.timestamp},
                {"wall_seconds", u.wall_seconds}};
      if (u.failed) {
        j["failed"] = true;
        j["error"] = u.error;
      } else {
        j["digest"] = u.digest_hex;
        j["loss"] = u.train_loss;
      }
      out << j.dump() << '\n';
    }
    out << json{{"record", "global"},
                {"round", r.round},
                {"digest", r.global_digest_hex}}
               .dump()
        << '\n';
  }
}

void WriteRunLogJsonl(const FederationRunLog& log,
                      const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  WriteRunLogJsonl(log, out);
}

FederationRunLog ReadRunLogJsonl(std::istream& in) {
  FederationRunLog log;
  std::string line;
  std::size_t line_no = 0;
  RoundRecord current;
  bool open = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError("run log line " + std::to_string(line_no) + ": " +
                           e.what(),
                       line_no);
    }
    const std::string kind = j.value("record", "");
    const int round = j.value("round", -1);
    if (!open) {
      current = {};
      current.round = round;
      open = true;
    }
    if (kind == "update") {
      UpdateRecord u;
      u.round = round;
      u.silo_id = j.value("silo_id", "");
      u.failed = j.value("failed", false);
      u.digest_hex = j.value("digest", "");
      u.train_loss = j.value("loss", 0.0);
      u.timestamp = j.value("timestamp", "");
      u.wall_seconds = j.value("wall_seconds", 0.0);
      u.error = j.value("error", "");
      current.updates.push_back(std::move(u));
    } else if (kind == "global") {
      current.round = round;
      current.global_digest_hex = j.value("digest", "");
      log.rounds.push_back(std::move(current));
      open = false;
    } else {
      throw ParseError("run log line " + std::to_string(line_no) +
                           ": unknown record type",
                       line_no);
    }
  }
  if (open) throw ParseError("run log ends inside a round", line_no);
  return log;
}

}  // namespace fedner::fedsim
