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

#include "fedner/bench/studies.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <future>
#include <map>

#include "fedner/common/error.h"
#include "fedner/corpus/generator.h"
#include "fedner/fedsim/run_log.h"
#include "fedner/persona/parameter_file.h"

namespace fedner::bench {
namespace {

namespace fs = std::filesystem;

std::string EpsilonLabel(double epsilon) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", epsilon);
  return buf;
}

double Percent(const ArmResult& arm, const std::string& id) {
  return RoundToHundredths(100.0 * arm.test_metrics.at(id).mean_f1);
}

void WriteTableFiles(const ResultTable& table, const std::string& title,
                     const fs::path& dir) {
  {
    std::ofstream csv = OpenOutput(dir / "results.csv");
    WriteResultCsv(table, csv);
  }
  std::ofstream md = OpenOutput(dir / "results.md");
  WriteResultMarkdown(table, title, md);
}

void WriteArmArtifacts(const ArmResult& arm, const fs::path& dir) {
  if (arm.federation) {
    fedsim::WriteRunLogJsonl(arm.federation->log, dir / "run_log.jsonl");
    persona::WriteParameterFile(arm.federation->global, dir / "global.fpv");
  }
  for (const persona::PersonalizedModel& pm : arm.personalized) {
    persona::WriteParameterFile(pm.parameters,
                                dir / "silos" / pm.silo_id / "personalized.fpv");
  }
  for (std::size_t i = 0; i < arm.individual_models.size(); ++i) {
    persona::WriteParameterFile(
        arm.individual_models[i],
        dir / "silos" / arm.silo_ids[i] / "individual.fpv");
  }
}

}  // namespace

ResultTable RunScenario(Experiment& experiment, Scenario scenario,
                        const SiloFilter& filter, std::optional<double> epsilon) {
  const ArmResult& individual = experiment.Run(Scenario::kIndividual, filter);
  const ArmResult& arm = experiment.Run(scenario, filter, epsilon);
  return BuildTable(arm, individual);
}

std::vector<SweepPoint> SweepEpsilon(Experiment& experiment,
                                     const std::vector<double>& epsilons) {
  const SiloFilter filter = experiment.config().silo_filter;
  const ArmResult& individual = experiment.Run(Scenario::kIndividual, filter);
  auto point = [&](double eps) {
    SweepPoint p;
    p.epsilon = eps;
    p.dp_fl = BuildTable(experiment.Run(Scenario::kDpFl, filter, eps), individual);
    p.ft_dp_fl =
        BuildTable(experiment.Run(Scenario::kFtDpFl, filter, eps), individual);
    return p;
  };
  std::vector<SweepPoint> out;
  if (experiment.config().parallel_arms) {
    std::vector<std::future<SweepPoint>> futures;
    for (double eps : epsilons) {
      futures.push_back(std::async(std::launch::async, point, eps));
    }
    for (auto& f : futures) out.push_back(f.get());
  } else {
    for (double eps : epsilons) out.push_back(point(eps));
  }
  return out;
}

std::vector<SmallFederationRow> SmallFederation(Experiment& experiment) {
  const std::vector<std::string> small = experiment.SmallSilos();
  if (small.size() < 2) {
    throw ConfigError("small-federation needs at least two small silos");
  }
  const SiloFilter all = SiloFilter::All();
  const SiloFilter only = SiloFilter::SmallOnly();
  const ArmResult& ind = experiment.Run(Scenario::kIndividual, only);
  const ArmResult& fl_small = experiment.Run(Scenario::kFl, only);
  const ArmResult& fl_full = experiment.Run(Scenario::kFl, all);
  const ArmResult& ft_small = experiment.Run(Scenario::kFtDpFl, only);
  const ArmResult& ft_full = experiment.Run(Scenario::kFtDpFl, all);
  std::vector<SmallFederationRow> out;
  for (const std::string& id : small) {
    SmallFederationRow row;
    row.silo_id = id;
    row.individual = Percent(ind, id);
    row.fl_small_only = Percent(fl_small, id);
    row.fl_full = Percent(fl_full, id);
    row.ft_dp_fl_small_only = Percent(ft_small, id);
    row.ft_dp_fl_full = Percent(ft_full, id);
    out.push_back(std::move(row));
  }
  return out;
}

fedsim::LeaveOneOutMatrix LeaveOneOutStudy(Experiment& experiment) {
  const auto ids = experiment.SelectSilos(experiment.config().silo_filter);
  return fedsim::LeaveOneOut(experiment.shape(), experiment.initial(),
                             experiment.SiloConfigs(ids, std::nullopt),
                             experiment.Federation());
}

std::vector<CalibrationRow> CalibrationTable(const Experiment& experiment,
                                             const std::vector<double>& epsilons) {
  const auto ids = experiment.SelectSilos(experiment.config().silo_filter);
  std::vector<CalibrationRow> out;
  for (double eps : epsilons) {
    for (const fedsim::SiloConfig& sc : experiment.SiloConfigs(ids, eps)) {
      CalibrationRow row;
      row.silo_id = sc.silo_id;
      row.train_sentences = sc.dataset->train().size();
      row.epsilon = eps;
      row.spec = *sc.privacy;
      out.push_back(std::move(row));
    }
  }
  return out;
}

void GenerateDataCommand(const ExperimentConfig& config, const fs::path& out) {
  Experiment experiment(config);
  corpus::WriteCorpus(experiment.corpus(), out / "corpus");
  std::ofstream summary = OpenOutput(out / "corpus_summary.csv");
  summary << "silo_id,sentences,train,validation,tune,test,entities,"
             "skew_exponent\n";
  for (std::size_t i = 0; i < experiment.corpus().silos.size(); ++i) {
    const corpus::SiloDataset& s = experiment.corpus().silos[i];
    std::size_t entities = 0;
    for (const auto& split : s.splits) {
      for (const auto& sentence : split) {
        entities += corpus::CountEntities(sentence.labels);
      }
    }
    char skew[32];
    std::snprintf(skew, sizeof(skew), "%.6f",
                  experiment.corpus().info[i].skew_exponent);
    summary << s.silo_id << ',' << s.TotalSentences() << ','
            << s.train().size() << ',' << s.validation().size() << ','
            << s.tune().size() << ',' << s.test().size() << ',' << entities
            << ',' << skew << '\n';
  }
  WriteManifest(experiment, "generate-data", out / "manifest.json");
}

void RunCommand(const ExperimentConfig& config, const fs::path& out) {
  Experiment experiment(config);
  const SiloFilter& filter = config.silo_filter;
  const ResultTable table = RunScenario(experiment, config.scenario, filter);
  const ArmResult& arm = experiment.Run(config.scenario, filter);
  std::string title = ScenarioName(config.scenario);
  if (IsPrivate(config.scenario)) {
    title += " (epsilon " + EpsilonLabel(config.EffectiveEpsilon()) + ")";
  }
  WriteTableFiles(table, title, out);
  {
    std::ofstream metrics = OpenOutput(out / "metrics.csv");
    WriteMetricsCsv(arm, "", metrics);
  }
  if (!arm.privacy.empty()) {
    std::vector<CalibrationRow> rows;
    for (const std::string& id : arm.silo_ids) {
      CalibrationRow row;
      row.silo_id = id;
      row.train_sentences = experiment.corpus().Silo(id).train().size();
      row.epsilon = *arm.epsilon;
      row.spec = arm.privacy.at(id);
      rows.push_back(std::move(row));
    }
    std::ofstream calibration = OpenOutput(out / "calibration.csv");
    WriteCalibrationCsv(rows, calibration);
  }
  WriteArmArtifacts(arm, out);
  WriteManifest(experiment, "run", out / "manifest.json");
}

void SweepEpsilonCommand(const ExperimentConfig& config, const fs::path& out) {
  Experiment experiment(config);
  std::vector<double> grid = config.epsilon_grid;
  if (config.epsilon) grid = {*config.epsilon};
  const std::vector<SweepPoint> points = SweepEpsilon(experiment, grid);
  std::ofstream summary = OpenOutput(out / "sweep.csv");
  summary << "epsilon,scenario,mean_f1\n";
  std::ofstream md = OpenOutput(out / "sweep.md");
  md << "| Epsilon | DP-FL F1 | FT-DP-FL F1 |\n|---:|---:|---:|\n";
  for (const SweepPoint& p : points) {
    const fs::path dir = out / ("eps_" + EpsilonLabel(p.epsilon));
    ResultTable both = p.dp_fl;
    both.rows.insert(both.rows.end(), p.ft_dp_fl.rows.begin(),
                     p.ft_dp_fl.rows.end());
    WriteTableFiles(both, "epsilon " + EpsilonLabel(p.epsilon), dir);
    char line[128];
    std::snprintf(line, sizeof(line), "%s,dp-fl,%.2f\n%s,ft-dp-fl,%.2f\n",
                  EpsilonLabel(p.epsilon).c_str(), p.dp_fl.MeanF1(),
                  EpsilonLabel(p.epsilon).c_str(), p.ft_dp_fl.MeanF1());
    summary << line;
    std::snprintf(line, sizeof(line), "| %s | %.2f | %.2f |\n",
                  EpsilonLabel(p.epsilon).c_str(), p.dp_fl.MeanF1(),
                  p.ft_dp_fl.MeanF1());
    md << line;
  }
  WriteManifest(experiment, "sweep-epsilon", out / "manifest.json");
}

void LeaveOneOutCommand(const ExperimentConfig& config, const fs::path& out) {
  Experiment experiment(config);
  const fedsim::LeaveOneOutMatrix m = LeaveOneOutStudy(experiment);
  {
    std::ofstream csv = OpenOutput(out / "leave_one_out.csv");
    WriteLeaveOneOutCsv(m, csv);
  }
  std::ofstream md = OpenOutput(out / "leave_one_out.md");
  md << "F1 change (points) of each column silo when the row silo leaves the "
        "FL federation; positive means the silo helped.\n\n| Removed |";
  for (const std::string& id : m.silo_ids) md << ' ' << id << " |";
  md << "\n|---|";
  for (std::size_t i = 0; i < m.silo_ids.size(); ++i) md << "---:|";
  md << '\n';
  for (std::size_t r = 0; r < m.silo_ids.size(); ++r) {
    md << "| " << m.silo_ids[r] << " |";
    for (std::size_t c = 0; c < m.silo_ids.size(); ++c) {
      char cell[32];
      std::snprintf(cell, sizeof(cell), " %.2f |", m.delta[r][c]);
      md << (r == c ? std::string(" - |") : std::string(cell));
    }
    md << '\n';
  }
  WriteManifest(experiment, "leave-one-out", out / "manifest.json");
}

void SmallFederationCommand(const ExperimentConfig& config, const fs::path& out) {
  Experiment experiment(config);
  const auto rows = SmallFederation(experiment);
  std::ofstream csv = OpenOutput(out / "small_federation.csv");
  csv << "silo_id,individual,fl_small_only,fl_full,ft_dp_fl_small_only,"
         "ft_dp_fl_full\n";
  std::ofstream md = OpenOutput(out / "small_federation.md");
  md << "| Silo | Individual | FL (small only) | FL (all) | FT-DP-FL (small "
        "only) | FT-DP-FL (all) |\n|---|---:|---:|---:|---:|---:|\n";
  for (const SmallFederationRow& r : rows) {
    char line[256];
    std::snprintf(line, sizeof(line), "%s,%.2f,%.2f,%.2f,%.2f,%.2f\n",
                  r.silo_id.c_str(), r.individual, r.fl_small_only, r.fl_full,
                  r.ft_dp_fl_small_only, r.ft_dp_fl_full);
    csv << line;
    std::snprintf(line, sizeof(line), "| %s | %.2f | %.2f | %.2f | %.2f | %.2f |\n",
                  r.silo_id.c_str(), r.individual, r.fl_small_only, r.fl_full,
                  r.ft_dp_fl_small_only, r.ft_dp_fl_full);
    md << line;
  }
  WriteManifest(experiment, "small-federation", out / "manifest.json");
}

void CalibrateSigmaCommand(const ExperimentConfig& config, const fs::path& out) {
  Experiment experiment(config);
  std::vector<double> grid = config.epsilon_grid;
  if (config.epsilon) grid = {*config.epsilon};
  const auto rows = CalibrationTable(experiment, grid);
  std::ofstream csv = OpenOutput(out / "calibration.csv");
  WriteCalibrationCsv(rows, csv);
  WriteManifest(experiment, "calibrate-sigma", out / "manifest.json");
}

void ReportCommand(const std::vector<fs::path>& inputs, const fs::path& out) {
  if (inputs.empty()) throw ConfigError("report needs at least one input");
  std::vector<fs::path> files;
  for (const fs::path& p : inputs) {
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::recursive_directory_iterator(p)) {
        if (e.is_regular_file() && e.path().filename() == "results.csv") {
          found.push_back(e.path());
        }
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::is_regular_file(p, ec)) {
      files.push_back(p);
    } else {
      throw IoError("no such report input: " + p.string());
    }
  }
  ResultTable merged;
  for (const fs::path& f : files) {
    std::ifstream in(f);
    if (!in) throw IoError("cannot read " + f.string());
    const ResultTable t = ParseResultCsv(in);
    merged.rows.insert(merged.rows.end(), t.rows.begin(), t.rows.end());
  }
  {
    std::ofstream csv = OpenOutput(out / "report.csv");
    WriteResultCsv(merged, csv);
  }
  std::ofstream md = OpenOutput(out / "report.md");
  WriteResultMarkdown(merged, "Results", md);
}

}  // namespace fedner::bench
