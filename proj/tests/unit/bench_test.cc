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
#include <sstream>
#include <string>
#include <vector>

#include "fedner/bench/config.h"
#include "fedner/bench/experiment.h"
#include "fedner/bench/report.h"
#include "fedner/bench/studies.h"
#include "fedner/common/error.h"
#include "gtest/gtest.h"

namespace fedner::bench {
namespace {

namespace fs = std::filesystem;

// Six silos of 60..12 sentences, two rounds: seconds, not minutes.
ExperimentConfig SmallConfig() {
  ExperimentConfig c;
  c.corpus.silos.resize(6);
  const double sizes[] = {600, 400, 300, 200, 150, 120};
  for (int i = 0; i < 6; ++i) c.corpus.silos[i].base_sentences = sizes[i];
  c.model.embedding_dim = 4;
  c.model.hidden_dim = 6;
  c.federation.rounds = 2;
  c.fine_tune.max_epochs = 3;
  c.fine_tune.patience = 2;
  c.epsilon_grid = {1.0, 4.0};
  return c;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path TempDir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("fedner_bench_" + name);
  fs::remove_all(d);
  return d;
}

TEST(ErrorReductionTest, ReproducesPublishedArithmetic) {
  EXPECT_NEAR(ErrorReduction(90.40, 84.60), 37.66, 0.01);
  EXPECT_NEAR(ErrorReduction(88.40, 84.60), 24.68, 0.01);
  EXPECT_DOUBLE_EQ(ErrorReduction(84.60, 84.60), 0.0);
  EXPECT_LT(ErrorReduction(80.0, 84.60), 0.0);
  EXPECT_DOUBLE_EQ(ErrorReduction(100.0, 100.0), 0.0);
  EXPECT_DOUBLE_EQ(RoundToHundredths(12.345678), 12.35);
  EXPECT_DOUBLE_EQ(RoundToHundredths(-0.004), 0.0);
}

TEST(ConfigTest, JsonRoundTripIsStable) {
  ExperimentConfig c = SmallConfig();
  c.epsilon = 3.5;
  c.scenario = Scenario::kFtDpFl;
  c.silo_filter = SiloFilter::LeaveOut("silo03");
  c.corpus.silos[2].skew_exponent = 1.25;
  const std::string text = ConfigToJson(c);
  const ExperimentConfig back = ConfigFromJson(text);
  EXPECT_EQ(ConfigToJson(back), text);
  EXPECT_EQ(ConfigFingerprint(back), ConfigFingerprint(c));
  EXPECT_EQ(back.silo_filter, c.silo_filter);
  EXPECT_DOUBLE_EQ(*back.epsilon, 3.5);
  EXPECT_EQ(ConfigToJson(ConfigFromJson("{}")), ConfigToJson(ExperimentConfig{}));
  c.master_seed += 1;
  EXPECT_NE(ConfigFingerprint(c), ConfigFingerprint(back));
}

TEST(ConfigTest, CheckedInDefaultMatchesBuiltIn) {
  const ExperimentConfig loaded =
      LoadConfig(fs::path(FEDNER_SOURCE_DIR) / "configs" / "default.json");
  EXPECT_EQ(ConfigToJson(loaded), ConfigToJson(ExperimentConfig{}));
}

TEST(ConfigTest, UnknownKeysAndBadValuesAreRejected) {
  for (const char* bad : {
           R"({"master_sed": 1})",
           R"({"model": {"hidden": 3}})",
           R"({"corpus": {"silos": [{"id": "a", "size": 3}]}})",
           R"({"federation": {"rounds": "many"}})",
           R"({"federation": {"rounds": 0}})",
           R"({"privacy": {"delta": 2}})",
           R"({"scenario": "central"})",
           R"({"silo_filter": "some"})",
           R"({"epsilon": -1})",
           R"({"fine_tune": {"patience": 0}})",
           "[1, 2]",
           "{not json",
       }) {
    EXPECT_THROW(ConfigFromJson(bad), ConfigError) << bad;
  }
  EXPECT_THROW(LoadConfig("/nonexistent/fedner.json"), Error);
}

TEST(ConfigTest, ScenarioAndFilterNames) {
  for (Scenario s : kAllScenarios) EXPECT_EQ(ParseScenario(ScenarioName(s)), s);
  EXPECT_STREQ(ScenarioName(Scenario::kFtDpFl), "ft-dp-fl");
  EXPECT_EQ(BaseScenario(Scenario::kFtDpFl), Scenario::kDpFl);
  EXPECT_EQ(BaseScenario(Scenario::kFtFl), Scenario::kFl);
  EXPECT_TRUE(IsPrivate(Scenario::kFtDpFl));
  EXPECT_FALSE(IsFederated(Scenario::kIndividual));
  for (const char* f : {"all", "small-only", "leave-out:silo07"}) {
    EXPECT_EQ(SiloFilter::Parse(f).ToString(), f);
  }
  EXPECT_THROW(SiloFilter::Parse("leave-out:"), ConfigError);
}

TEST(ReportTest, CsvRoundTripAndFormatting) {
  ResultTable t;
  t.rows = {{"silo01", "fl", 90.4, 91.2, 89.6, 37.66},
            {"silo02", "fl", 0.0, 0.0, 0.0, 0.0}};
  std::ostringstream out;
  WriteResultCsv(t, out);
  EXPECT_EQ(out.str(),
            "silo_id,scenario,mean_f1,f1_B,f1_I,error_reduction_vs_individual\n"
            "silo01,fl,90.40,91.20,89.60,37.66\n"
            "silo02,fl,0.00,0.00,0.00,0.00\n");
  std::istringstream in(out.str());
  EXPECT_EQ(ParseResultCsv(in), t);
  EXPECT_DOUBLE_EQ(t.MeanF1(), 45.2);
  std::istringstream bad("silo_id,scenario\nx,y\n");
  EXPECT_THROW(ParseResultCsv(bad), ParseError);
  std::ostringstream md;
  WriteResultMarkdown(t, "FL", md);
  EXPECT_NE(md.str().find("| silo01 |"), std::string::npos);
}

class ExperimentTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { exp_ = new Experiment(SmallConfig()); }
  static void TearDownTestSuite() { delete exp_; }
  static Experiment* exp_;
};
Experiment* ExperimentTest::exp_ = nullptr;

TEST_F(ExperimentTest, FiltersSelectExpectedSilos) {
  EXPECT_EQ(exp_->SelectSilos(SiloFilter::All()).size(), 6u);
  const auto small = exp_->SmallSilos();
  EXPECT_EQ(small, (std::vector<std::string>{"silo02", "silo03", "silo04",
                                             "silo05", "silo06"}));
  EXPECT_EQ(exp_->SelectSilos(SiloFilter::SmallOnly()), small);
  const auto loo = exp_->SelectSilos(SiloFilter::LeaveOut("silo04"));
  EXPECT_EQ(loo.size(), 5u);
  EXPECT_EQ(std::count(loo.begin(), loo.end(), "silo04"), 0);
  EXPECT_THROW(exp_->SelectSilos(SiloFilter::LeaveOut("nope")), ConfigError);
}

TEST_F(ExperimentTest, ArmsShareCorpusAndInitialModel) {
  const ArmResult& fl = exp_->Run(Scenario::kFl, SiloFilter::All());
  const ArmResult& dp = exp_->Run(Scenario::kDpFl, SiloFilter::All(), 4.0);
  ASSERT_TRUE(fl.federation && dp.federation);
  EXPECT_EQ(fl.federation->log.initial_digest_hex, exp_->initial().DigestHex());
  EXPECT_EQ(dp.federation->log.initial_digest_hex, exp_->initial().DigestHex());
  EXPECT_EQ(dp.privacy.size(), 6u);
  for (const auto& [id, spec] : dp.privacy) {
    EXPECT_LE(spec.achieved_epsilon, 4.0);
    EXPECT_GE(spec.achieved_epsilon, 4.0 * 0.999);
  }
  // Cached: same object.
  EXPECT_EQ(&exp_->Run(Scenario::kFl, SiloFilter::All()), &fl);
}

TEST_F(ExperimentTest, FineTunedArmsReuseBaseTranscript) {
  const ArmResult& fl = exp_->Run(Scenario::kFl, SiloFilter::All());
  const ArmResult& ft = exp_->Run(Scenario::kFtFl, SiloFilter::All());
  ASSERT_TRUE(ft.federation);
  EXPECT_EQ(ft.federation->log.ShippedDigests(),
            fl.federation->log.ShippedDigests());
  EXPECT_EQ(ft.personalized.size(), 6u);
  for (const auto& p : ft.personalized) {
    EXPECT_EQ(p.base_digest_hex, fl.federation->global.DigestHex());
  }
}

TEST_F(ExperimentTest, TableRowsAreRoundedAndReferenceIndividual) {
  const ArmResult& ind = exp_->Run(Scenario::kIndividual, SiloFilter::All());
  const ArmResult& fl = exp_->Run(Scenario::kFl, SiloFilter::All());
  const ResultTable self = BuildTable(ind, ind);
  for (const auto& r : self.rows) EXPECT_DOUBLE_EQ(r.error_reduction, 0.0);
  const ResultTable t = BuildTable(fl, ind);
  ASSERT_EQ(t.rows.size(), 6u);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    EXPECT_EQ(t.rows[i].scenario, "fl");
    EXPECT_DOUBLE_EQ(t.rows[i].mean_f1, RoundToHundredths(t.rows[i].mean_f1));
    EXPECT_DOUBLE_EQ(t.rows[i].error_reduction,
                     RoundToHundredths(ErrorReduction(t.rows[i].mean_f1,
                                                      self.rows[i].mean_f1)));
  }
}

TEST(CommandTest, RunIsByteDeterministicAndWritesArtifacts) {
  ExperimentConfig c = SmallConfig();
  c.scenario = Scenario::kFtDpFl;
  const fs::path a = TempDir("run_a"), b = TempDir("run_b");
  RunCommand(c, a);
  RunCommand(c, b);
  for (const char* f : {"results.csv", "results.md", "metrics.csv",
                        "calibration.csv", "manifest.json", "global.fpv"}) {
    ASSERT_TRUE(fs::exists(a / f)) << f;
    EXPECT_EQ(Slurp(a / f), Slurp(b / f)) << f;
  }
  EXPECT_TRUE(fs::exists(a / "silos" / "silo01" / "personalized.fpv"));
  // The manifest alone reproduces the run.
  const ExperimentConfig again = LoadConfig(a / "manifest.json");
  const fs::path c2 = TempDir("run_c");
  RunCommand(again, c2);
  EXPECT_EQ(Slurp(a / "results.csv"), Slurp(c2 / "results.csv"));
  for (const auto& d : {a, b, c2}) fs::remove_all(d);
}

TEST(CommandTest, CalibrateAndReportCommands) {
  ExperimentConfig c = SmallConfig();
  const fs::path out = TempDir("cal");
  CalibrateSigmaCommand(c, out);
  const std::string csv = Slurp(out / "calibration.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 6 * 2);
  c.scenario = Scenario::kFl;
  RunCommand(c, out / "fl");
  c.scenario = Scenario::kIndividual;
  RunCommand(c, out / "ind");
  ReportCommand({out}, out / "report");
  const std::string report = Slurp(out / "report" / "report.csv");
  EXPECT_NE(report.find(",fl,"), std::string::npos);
  EXPECT_NE(report.find(",individual,"), std::string::npos);
  fs::remove_all(out);
}

}  // namespace
}  // namespace fedner::bench
