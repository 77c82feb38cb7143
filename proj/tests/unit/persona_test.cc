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

#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "fedner/common/error.h"
#include "fedner/common/rng.h"
#include "fedner/fedsim/federation.h"
#include "fedner/persona/fine_tune.h"
#include "fedner/persona/pac_verifier.h"
#include "fedner/persona/parameter_file.h"
#include "fedner/tagcore/metrics.h"
#include "gtest/gtest.h"
#include "oracles/generators.h"
#include "oracles/mutant_silo.h"

namespace fedner::persona {
namespace {

using tagcore::ParameterVector;

class PersonaTest : public ::testing::Test {
 protected:
  void SetUp() override {
    Rng rng(123);
    setup_.shape.vocab_size = 10;
    setup_.shape.embedding_dim = 3;
    setup_.shape.hidden_dim = 4;
    setup_.shape.window_radius = 1;
    setup_.initial =
        tagcore::TaggerModel::Initialize(setup_.shape, rng).parameters();
    for (int i = 0; i < 3; ++i) {
      data_.push_back(testing::RandomSilo("p" + std::to_string(i), 10,
                                          15 + 5 * i, 6, 6, rng));
    }
    for (const auto& d : data_) {
      fedsim::SiloConfig c;
      c.silo_id = d.silo_id;
      c.dataset = &d;
      c.learning_rate = 0.1;
      setup_.silos.push_back(c);
    }
    setup_.federation.rounds = 3;
    setup_.federation.master_seed = 5;
    setup_.fine_tune.learning_rate = 0.1;
    setup_.fine_tune.max_epochs = 6;
    setup_.fingerprint = "fp";
  }

  PacSetup Private() const {
    PacSetup p = setup_;
    for (auto& c : p.silos) {
      c.privacy = dpcore::MakePrivacySpec(2.0, 1e-5, 1.0, 4,
                                          c.dataset->train().size(),
                                          p.federation.rounds, 1);
    }
    return p;
  }

  std::vector<corpus::SiloDataset> data_;
  PacSetup setup_;
};

TEST_F(PersonaTest, FineTuneReturnsBestValidationCheckpoint) {
  const auto& silo = setup_.silos[1];
  const PersonalizedModel m =
      FineTune(setup_.shape, setup_.initial, silo, setup_.fine_tune, 5);
  ASSERT_FALSE(m.validation_history.empty());
  EXPECT_EQ(m.base_digest_hex, setup_.initial.DigestHex());
  EXPECT_EQ(m.silo_id, silo.silo_id);
  // Best is the strict maximum, earliest on ties.
  const auto& h = m.validation_history;
  const auto best = std::max_element(h.begin(), h.end());
  EXPECT_EQ(m.best_epoch, best - h.begin());
  EXPECT_DOUBLE_EQ(m.best_validation_f1, *best);
  const double scored =
      tagcore::Evaluate(tagcore::TaggerModel(setup_.shape, m.parameters),
                        silo.dataset->validation())
          .mean_f1;
  EXPECT_DOUBLE_EQ(scored, m.best_validation_f1);
  // Early stop: at most `patience` epochs after the best one.
  EXPECT_LE(static_cast<int>(h.size()) - 1, m.best_epoch + setup_.fine_tune.patience);
  if (m.best_epoch == 0) EXPECT_TRUE(m.parameters.BitwiseEquals(setup_.initial));
}

TEST_F(PersonaTest, FineTuneZeroEpochsIsIdentityAndConfigIsValidated) {
  FineTuneConfig c = setup_.fine_tune;
  c.max_epochs = 0;
  const PersonalizedModel m =
      FineTune(setup_.shape, setup_.initial, setup_.silos[0], c, 5);
  EXPECT_TRUE(m.parameters.BitwiseEquals(setup_.initial));
  EXPECT_EQ(m.best_epoch, 0);
  c = setup_.fine_tune;
  c.patience = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = setup_.fine_tune;
  c.learning_rate = -1;
  EXPECT_THROW(c.Validate(), ConfigError);
  corpus::SiloDataset empty_val = data_[0];
  empty_val.splits[1].clear();
  fedsim::SiloConfig s = setup_.silos[0];
  s.dataset = &empty_val;
  EXPECT_THROW(FineTune(setup_.shape, setup_.initial, s, setup_.fine_tune, 5),
               ConfigError);
}

TEST_F(PersonaTest, HonestTranscriptsAreIdentical) {
  for (const PacSetup& p : {setup_, Private()}) {
    const TranscriptVerdict v = PacTranscriptCheck(p, 99);
    EXPECT_TRUE(v.pass) << v.Describe();
    EXPECT_EQ(v.compared_updates, 9u);
    EXPECT_FALSE(v.first_divergence.has_value());
    EXPECT_TRUE(v.leaked_silos.empty());
  }
}

TEST_F(PersonaTest, MutantThatShipsFineTunedVectorIsDetected) {
  for (const PacSetup& p : {setup_, Private()}) {
    const ProtocolRun honest = RunPlainProtocol(p);
    auto mutants = testing::MakeMutantSilos(p.shape, p.silos, p.fine_tune);
    std::vector<fedsim::SiloClient*> clients;
    for (auto& m : mutants) clients.push_back(m.get());
    ProtocolRun mutant;
    mutant.federation =
        fedsim::RunFederation(p.initial, clients, p.federation, p.fingerprint);
    for (auto& m : mutants) {
      mutant.personalized.insert(mutant.personalized.end(),
                                 m->shipped_personalized.begin(),
                                 m->shipped_personalized.end());
    }
    const TranscriptVerdict v = VerifyRuns(honest, mutant);
    EXPECT_FALSE(v.pass);
    ASSERT_TRUE(v.first_divergence.has_value());
    EXPECT_EQ(v.first_divergence->round, 0);
    EXPECT_FALSE(v.leaked_silos.empty());
    for (const std::string& id : v.leaked_silos) {
      EXPECT_TRUE(id == "p0" || id == "p1" || id == "p2") << id;
    }
  }
}

TEST_F(PersonaTest, MismatchedConfigurationsCannotBeCompared) {
  const ProtocolRun a = RunPlainProtocol(setup_);
  PacSetup other = setup_;
  other.fingerprint = "other";
  const ProtocolRun b = RunPlainProtocol(other);
  EXPECT_THROW(CompareTranscripts(a.federation.log, b.federation.log),
               VerifierError);
}

TEST(ParameterFileTest, RoundTripIsBitExact) {
  Rng rng(8);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  std::vector<double> v(257);
  for (double& x : v) x = u(rng);
  v[3] = -0.0;
  v[4] = 5e-324;
  const ParameterVector p("v9x3/h4/r1", v);
  const auto path = std::filesystem::temp_directory_path() / "fedner_pf.fpv";
  WriteParameterFile(p, path);
  EXPECT_EQ(std::filesystem::file_size(path),
            8u + 4u + 4u + p.layout_id().size() + 8u + 8u * v.size());
  const ParameterVector back = ReadParameterFile(path);
  EXPECT_EQ(back.layout_id(), p.layout_id());
  EXPECT_TRUE(back.BitwiseEquals(p));
  EXPECT_EQ(back.DigestHex(), p.DigestHex());
  std::filesystem::remove(path);
}

TEST(ParameterFileTest, RejectsMalformedFiles) {
  const auto dir = std::filesystem::temp_directory_path();
  EXPECT_THROW(ReadParameterFile(dir / "fedner_absent.fpv"), IoError);
  const auto path = dir / "fedner_bad.fpv";
  {
    std::ofstream out(path, std::ios::binary);
    out << "NOTMAGIC";
  }
  EXPECT_THROW(ReadParameterFile(path), ParseError);
  const ParameterVector p("x", {1.0, 2.0});
  WriteParameterFile(p, path);
  std::filesystem::resize_file(path, std::filesystem::file_size(path) - 3);
  EXPECT_THROW(ReadParameterFile(path), ParseError);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace fedner::persona
