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

#include "fedner/bench/report.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "fedner/common/error.h"
#include "json.hpp"

#ifndef FEDNER_VERSION_STRING
#define FEDNER_VERSION_STRING "unknown"
#endif

namespace fedner::bench {
namespace {

constexpr const char* kResultHeader =
    "silo_id,scenario,mean_f1,f1_B,f1_I,error_reduction_vs_individual";

std::string Fixed2(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", x);
  // Avoid "-0.00".
  if (std::string_view(buf) == "-0.00") return "0.00";
  return buf;
}

std::string Fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", x);
  return buf;
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double ParseNumber(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad number '" + s + "'", line);
  }
}

double Percent(double fraction) { return RoundToHundredths(100.0 * fraction); }

}  // namespace

double ResultTable::MeanF1() const {
  if (rows.empty()) return 0.0;
  double total = 0.0;
  for (const ResultRow& r : rows) total += r.mean_f1;
  return total / static_cast<double>(rows.size());
}

double RoundToHundredths(double x) { return std::round(x * 100.0) / 100.0; }

double ErrorReduction(double f1, double f1_individual) {
  const double headroom = 100.0 - f1_individual;
  if (headroom <= 0.0) return 0.0;
  return RoundToHundredths(100.0 * (f1 - f1_individual) / headroom);
}

ResultTable BuildTable(const ArmResult& arm, const ArmResult& individual,
                       const std::string& label) {
  ResultTable table;
  for (const std::string& id : arm.silo_ids) {
    const tagcore::MetricReport& m = arm.test_metrics.at(id);
    auto ind = individual.test_metrics.find(id);
    if (ind == individual.test_metrics.end()) {
      throw ConfigError("no individual baseline for silo '" + id + "'");
    }
    ResultRow row;
    row.silo_id = id;
    row.scenario = label.empty() ? ScenarioName(arm.scenario) : label;
    row.mean_f1 = Percent(m.mean_f1);
    row.f1_b = Percent(m.f1_b);
    row.f1_i = Percent(m.f1_i);
    row.error_reduction =
        ErrorReduction(row.mean_f1, Percent(ind->second.mean_f1));
    table.rows.push_back(std::move(row));
  }
  return table;
}

void WriteResultCsv(const ResultTable& table, std::ostream& out) {
  out << kResultHeader << '\n';
  for (const ResultRow& r : table.rows) {
    out << r.silo_id << ',' << r.scenario << ',' << Fixed2(r.mean_f1) << ','
        << Fixed2(r.f1_b) << ',' << Fixed2(r.f1_i) << ','
        << Fixed2(r.error_reduction) << '\n';
  }
}

ResultTable ParseResultCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kResultHeader) {
    throw ParseError("missing or unexpected result CSV header", 1);
  }
  ResultTable table;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = SplitCsvLine(line);
    if (f.size() != 6) throw ParseError("expected 6 fields", line_no);
    ResultRow r;
    r.silo_id = f[0];
    r.scenario = f[1];
    r.mean_f1 = ParseNumber(f[2], line_no);
    r.f1_b = ParseNumber(f[3], line_no);
    r.f1_i = ParseNumber(f[4], line_no);
    r.error_reduction = ParseNumber(f[5], line_no);
    table.rows.push_back(std::move(r));
  }
  return table;
}

void WriteResultMarkdown(const ResultTable& table, const std::string& title,
                         std::ostream& out) {
  if (!title.empty()) out << "## " << title << "\n\n";
  out << "| Silo | Scenario | F1 | F1 (B) | F1 (I) | Error Red. |\n"
      << "|---|---|---:|---:|---:|---:|\n";
  for (const ResultRow& r : table.rows) {
    out << "| " << r.silo_id << " | " << r.scenario << " | "
        << Fixed2(r.mean_f1) << " | " << Fixed2(r.f1_b) << " | "
        << Fixed2(r.f1_i) << " | " << Fixed2(r.error_reduction) << "% |\n";
  }
  if (!table.rows.empty()) {
    out << "\nMean F1 over silos: " << Fixed2(table.MeanF1()) << "\n";
  }
  out << '\n';
}

void WriteMetricsCsv(const ArmResult& arm, const std::string& label,
                     std::ostream& out, bool header) {
  if (header) {
    out << "silo_id,scenario,f1_B,f1_I,mean_f1,precision_B,recall_B,"
           "precision_I,recall_I\n";
  }
  const std::string name = label.empty() ? ScenarioName(arm.scenario) : label;
  for (const std::string& id : arm.silo_ids) {
    const tagcore::MetricReport& m = arm.test_metrics.at(id);
    out << id << ',' << name << ',' << Fixed2(100 * m.f1_b) << ','
        << Fixed2(100 * m.f1_i) << ',' << Fixed2(100 * m.mean_f1) << ','
        << Fixed2(100 * m.precision_b) << ',' << Fixed2(100 * m.recall_b)
        << ',' << Fixed2(100 * m.precision_i) << ','
        << Fixed2(100 * m.recall_i) << '\n';
  }
}

void WriteCalibrationCsv(const std::vector<CalibrationRow>& rows,
                         std::ostream& out) {
  out << "silo_id,train_sentences,target_epsilon,sampling_rate,steps,sigma,"
         "achieved_epsilon\n";
  for (const CalibrationRow& r : rows) {
    out << r.silo_id << ',' << r.train_sentences << ',' << Fixed6(r.epsilon)
        << ',' << Fixed6(r.spec.sampling_rate) << ',' << r.spec.steps << ','
        << Fixed6(r.spec.sigma) << ',' << Fixed6(r.spec.achieved_epsilon)
        << '\n';
  }
}

void WriteLeaveOneOutCsv(const fedsim::LeaveOneOutMatrix& m, std::ostream& out) {
  out << "removed";
  for (const std::string& id : m.silo_ids) out << ',' << id;
  out << '\n';
  for (std::size_t r = 0; r < m.silo_ids.size(); ++r) {
    out << m.silo_ids[r];
    for (std::size_t c = 0; c < m.silo_ids.size(); ++c) {
      out << ',' << Fixed2(m.delta[r][c]);
    }
    out << '\n';
  }
}

std::ofstream OpenOutput(const std::filesystem::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      throw IoError("cannot create directory " + path.parent_path().string() +
                    ": " + ec.message());
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void WriteManifest(const Experiment& experiment, const std::string& verb,
                   const std::filesystem::path& path) {
  using nlohmann::json;
  json digests = json::object();
  digests["initial_model"] = experiment.initial().DigestHex();
  json silos = json::array();
  for (const auto& s : experiment.corpus().silos) {
    silos.push_back({{"id", s.silo_id},
                     {"train", s.train().size()},
                     {"validation", s.validation().size()},
                     {"tune", s.tune().size()},
                     {"test", s.test().size()}});
  }
  json j = {{"tool", "fedner"},
            {"version", VersionString()},
            {"verb", verb},
            {"master_seed", experiment.config().master_seed},
            {"config_fingerprint", ConfigFingerprint(experiment.config())},
            {"layout", experiment.shape().LayoutId()},
            {"digests", digests},
            {"silos", silos},
            {"config", json::parse(ConfigToJson(experiment.config()))}};
  std::ofstream out = OpenOutput(path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

const char* VersionString() { return FEDNER_VERSION_STRING; }

}  // namespace fedner::bench
