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

#include "fedner/persona/pac_verifier.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "fedner/common/error.h"

namespace fedner::persona {

std::string TranscriptVerdict::Describe() const {
  std::ostringstream out;
  out << (pass ? "pass" : "fail") << ": compared " << compared_updates
      << " shipped updates";
  if (first_divergence) {
    out << "; first divergence at round " << first_divergence->round
        << ", silo " << first_divergence->silo_id << " ("
        << first_divergence->reference_digest_hex << " vs "
        << first_divergence->candidate_digest_hex << ")";
  }
  for (const std::string& id : leaked_silos) {
    out << "; personalized model of " << id << " was shipped";
  }
  return out.str();
}

TranscriptVerdict CompareTranscripts(const fedsim::FederationRunLog& reference,
                                     const fedsim::FederationRunLog& candidate) {
  if (reference.config_fingerprint != candidate.config_fingerprint) {
    throw VerifierError("transcripts come from different configurations");
  }
  if (reference.initial_digest_hex != candidate.initial_digest_hex) {
    throw VerifierError("transcripts start from different initial models");
  }
  if (reference.rounds.size() != candidate.rounds.size()) {
    throw VerifierError("transcripts have different round counts");
  }
  TranscriptVerdict verdict;
  for (std::size_t r = 0; r < reference.rounds.size(); ++r) {
    const auto& ref = reference.rounds[r].updates;
    const auto& cand = candidate.rounds[r].updates;
    const std::size_t n = std::max(ref.size(), cand.size());
    for (std::size_t i = 0; i < n; ++i) {
      TranscriptDivergence d;
      d.round = reference.rounds[r].round;
      if (i < ref.size()) {
        d.silo_id = ref[i].silo_id;
        d.reference_digest_hex = ref[i].digest_hex;
      }
      if (i < cand.size()) {
        if (d.silo_id.empty()) d.silo_id = cand[i].silo_id;
        d.candidate_digest_hex = cand[i].digest_hex;
      }
      const bool same = i < ref.size() && i < cand.size() &&
                        ref[i].silo_id == cand[i].silo_id &&
                        ref[i].failed == cand[i].failed &&
                        ref[i].digest_hex == cand[i].digest_hex;
      ++verdict.compared_updates;
      if (!same && !verdict.first_divergence) verdict.first_divergence = d;
    }
  }
  verdict.pass = !verdict.first_divergence;
  return verdict;
}

std::vector<std::string> FindLeakedModels(
    const fedsim::FederationRunLog& log,
    const std::vector<PersonalizedModel>& personalized) {
  const std::vector<std::string> shipped_list = log.ShippedDigests();
  const std::set<std::string> shipped(shipped_list.begin(), shipped_list.end());
  std::vector<std::string> out;
  for (const PersonalizedModel& p : personalized) {
    // An untouched global copy equals the previous aggregate, not a shipped
    // local update; only models that moved away from it can leak.
    if (p.best_epoch == 0) continue;
    if (shipped.count(p.parameters.DigestHex())) out.push_back(p.silo_id);
  }
  return out;
}

ProtocolRun RunPlainProtocol(const PacSetup& setup) {
  const auto silos = fedsim::MakeLocalSilos(setup.shape, setup.silos);
  const auto ptrs = fedsim::ClientPointers(silos);
  ProtocolRun run;
  run.federation = fedsim::RunFederation(setup.initial, ptrs, setup.federation,
                                         setup.fingerprint);
  return run;
}

ProtocolRun RunFineTunedProtocol(const PacSetup& setup) {
  ProtocolRun run = RunPlainProtocol(setup);
  for (const fedsim::SiloConfig& silo : setup.silos) {
    fedsim::SiloConfig plain = silo;
    plain.privacy.reset();
    run.personalized.push_back(FineTune(setup.shape, run.federation.global, plain,
                                        setup.fine_tune,
                                        setup.federation.master_seed));
  }
  return run;
}

TranscriptVerdict VerifyRuns(const ProtocolRun& plain,
                             const ProtocolRun& personalized) {
  TranscriptVerdict verdict =
      CompareTranscripts(plain.federation.log, personalized.federation.log);
  verdict.leaked_silos =
      FindLeakedModels(personalized.federation.log, personalized.personalized);
  verdict.pass = verdict.pass && verdict.leaked_silos.empty();
  return verdict;
}

TranscriptVerdict PacTranscriptCheck(PacSetup setup, std::uint64_t master_seed) {
  setup.federation.master_seed = master_seed;
  return VerifyRuns(RunPlainProtocol(setup), RunFineTunedProtocol(setup));
}

}  // namespace fedner::persona
