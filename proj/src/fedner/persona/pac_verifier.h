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

#ifndef FEDNER_PERSONA_PAC_VERIFIER_H_
#define FEDNER_PERSONA_PAC_VERIFIER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fedner/fedsim/federation.h"
#include "fedner/fedsim/run_log.h"
#include "fedner/persona/fine_tune.h"

namespace fedner::persona {

// Transcript argument for non-identifiability of personalization: if the
// fine-tuned protocol ships exactly the same updates as the plain protocol,
// the server's view is independent of every silo's private fine-tuning, so
// any reconstruction of it from shipped updates is the null estimate.

struct TranscriptDivergence {
  int round = 0;
  std::string silo_id;
  std::string reference_digest_hex;
  std::string candidate_digest_hex;
};

struct TranscriptVerdict {
  bool pass = false;
  std::size_t compared_updates = 0;
  std::optional<TranscriptDivergence> first_divergence;
  // Silos whose personalized parameters appear among shipped updates.
  std::vector<std::string> leaked_silos;

  std::string Describe() const;
};

// Compares shipped-update digests round by round in silo-id order. Throws
// VerifierError if the logs come from different configurations (fingerprint
// or initial model differ, or round counts differ).
TranscriptVerdict CompareTranscripts(const fedsim::FederationRunLog& reference,
                                     const fedsim::FederationRunLog& candidate);

// Ids of personalized models whose digest occurs among the log's shipped
// updates.
std::vector<std::string> FindLeakedModels(
    const fedsim::FederationRunLog& log,
    const std::vector<PersonalizedModel>& personalized);

struct PacSetup {
  tagcore::ModelShape shape;
  tagcore::ParameterVector initial;
  std::vector<fedsim::SiloConfig> silos;
  fedsim::FederationConfig federation;
  FineTuneConfig fine_tune;
  std::string fingerprint;
};

struct ProtocolRun {
  fedsim::FederationResult federation;
  std::vector<PersonalizedModel> personalized;  // empty for plain protocols
};

// FL (or DP-FL, when the silo configs carry privacy specs).
ProtocolRun RunPlainProtocol(const PacSetup& setup);
// FT-FL / FT-DP-FL: the same federation followed by per-silo fine-tuning.
ProtocolRun RunFineTunedProtocol(const PacSetup& setup);

// Verdict over a plain run and a personalized run. Passes iff the transcripts
// are identical and no personalized model was shipped.
TranscriptVerdict VerifyRuns(const ProtocolRun& plain,
                             const ProtocolRun& personalized);

// Runs both honest protocols with `master_seed` and verifies them.
TranscriptVerdict PacTranscriptCheck(PacSetup setup, std::uint64_t master_seed);

}  // namespace fedner::persona

#endif  // FEDNER_PERSONA_PAC_VERIFIER_H_
