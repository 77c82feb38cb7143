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

#ifndef FEDNER_BENCH_STUDIES_H_
#define FEDNER_BENCH_STUDIES_H_

#include <filesystem>
#include <string>
#include <vector>

#include "fedner/bench/config.h"
#include "fedner/bench/experiment.h"
#include "fedner/bench/report.h"
#include "fedner/fedsim/federation.h"

namespace fedner::bench {

// The configured scenario with error reduction against the individual arm.
ResultTable RunScenario(Experiment& experiment, Scenario scenario,
                        const SiloFilter& filter,
                        std::optional<double> epsilon = std::nullopt);

struct SweepPoint {
  double epsilon = 0.0;
  ResultTable dp_fl;
  ResultTable ft_dp_fl;
};

// DP-FL and FT-DP-FL at every epsilon, sharing corpus, splits and seeds.
// Points run concurrently when the config enables parallel arms.
std::vector<SweepPoint> SweepEpsilon(Experiment& experiment,
                                     const std::vector<double>& epsilons);

// Each small silo's F1 when federating with the small silos only versus
// with everyone, for FL and FT-DP-FL at the configured epsilon.
struct SmallFederationRow {
  std::string silo_id;
  double individual = 0.0;
  double fl_small_only = 0.0;
  double fl_full = 0.0;
  double ft_dp_fl_small_only = 0.0;
  double ft_dp_fl_full = 0.0;
};
std::vector<SmallFederationRow> SmallFederation(Experiment& experiment);

// FL leave-one-out over the configured silo set.
fedsim::LeaveOneOutMatrix LeaveOneOutStudy(Experiment& experiment);

// Calibrated privacy parameters of every silo at each epsilon.
std::vector<CalibrationRow> CalibrationTable(
    const Experiment& experiment, const std::vector<double>& epsilons);

// CLI verbs. Each writes its artifacts plus manifest.json under `out`.
void GenerateDataCommand(const ExperimentConfig& config,
                         const std::filesystem::path& out);
void RunCommand(const ExperimentConfig& config, const std::filesystem::path& out);
void SweepEpsilonCommand(const ExperimentConfig& config,
                         const std::filesystem::path& out);
void LeaveOneOutCommand(const ExperimentConfig& config,
                        const std::filesystem::path& out);
void SmallFederationCommand(const ExperimentConfig& config,
                            const std::filesystem::path& out);
void CalibrateSigmaCommand(const ExperimentConfig& config,
                           const std::filesystem::path& out);
// Merges result CSVs (files, or directories searched recursively for
// results.csv) into report.csv and report.md.
void ReportCommand(const std::vector<std::filesystem::path>& inputs,
                   const std::filesystem::path& out);

}  // namespace fedner::bench

#endif  // FEDNER_BENCH_STUDIES_H_
