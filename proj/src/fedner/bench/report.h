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

#ifndef FEDNER_BENCH_REPORT_H_
#define FEDNER_BENCH_REPORT_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "fedner/bench/config.h"
#include "fedner/bench/experiment.h"
#include "fedner/fedsim/federation.h"

namespace fedner::bench {

// F1 values are on the 0-100 scale, rounded to two decimals; the error
// reduction is a percentage, rounded the same way.
struct ResultRow {
  std::string silo_id;
  std::string scenario;
  double mean_f1 = 0.0;
  double f1_b = 0.0;
  double f1_i = 0.0;
  double error_reduction = 0.0;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

struct ResultTable {
  std::vector<ResultRow> rows;

  double MeanF1() const;
  friend bool operator==(const ResultTable&, const ResultTable&) = default;
};

// Nearest multiple of 0.01.
double RoundToHundredths(double x);

// 100 * (f1 - f1_individual) / (100 - f1_individual) on percentage-scale
// F1, rounded to hundredths. A perfect individual score leaves nothing to
// reduce and yields 0.
double ErrorReduction(double f1, double f1_individual);

// One row per silo of `arm`, with error reduction against `individual`
// (which must cover the same silos). `label` overrides the scenario name.
ResultTable BuildTable(const ArmResult& arm, const ArmResult& individual,
                       const std::string& label = "");

// Columns: silo_id,scenario,mean_f1,f1_B,f1_I,error_reduction_vs_individual
void WriteResultCsv(const ResultTable& table, std::ostream& out);
ResultTable ParseResultCsv(std::istream& in);
// Markdown table with one row per (silo, scenario).
void WriteResultMarkdown(const ResultTable& table, const std::string& title,
                         std::ostream& out);

// Columns: silo_id,scenario,f1_B,f1_I,mean_f1,precision_B,recall_B,
// precision_I,recall_I
void WriteMetricsCsv(const ArmResult& arm, const std::string& label,
                     std::ostream& out, bool header = true);

// Columns: silo_id,train_sentences,sampling_rate,steps,sigma,achieved_epsilon
struct CalibrationRow {
  std::string silo_id;
  std::size_t train_sentences = 0;
  double epsilon = 0.0;
  dpcore::PrivacySpec spec;
};
void WriteCalibrationCsv(const std::vector<CalibrationRow>& rows,
                         std::ostream& out);

// Square matrix; row = removed silo, column = evaluated silo.
void WriteLeaveOneOutCsv(const fedsim::LeaveOneOutMatrix& m, std::ostream& out);

// Reproduction record: config, seed, tool version and the digests that
// pin the shared inputs.
void WriteManifest(const Experiment& experiment, const std::string& verb,
                   const std::filesystem::path& path);

// Opens `path` for writing, creating parent directories. Throws IoError.
std::ofstream OpenOutput(const std::filesystem::path& path);

// Version string baked in at build time ("git describe" style).
const char* VersionString();

}  // namespace fedner::bench

#endif  // FEDNER_BENCH_REPORT_H_
