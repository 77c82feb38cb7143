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

#include "fedner/fedner.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "fedner/bench/config.h"
#include "fedner/bench/experiment.h"
#include "fedner/bench/report.h"
#include "fedner/bench/studies.h"
#include "fedner/common/error.h"
#include "fedner/dpcore/accountant.h"
#include "fedner/dpcore/calibration.h"

struct fedner_config {
  fedner::bench::ExperimentConfig value;
};

struct fedner_result {
  fedner::bench::ResultTable table;
};

namespace {

thread_local std::string g_last_error;

fedner_status StatusFor(fedner::ErrorKind kind) {
  using fedner::ErrorKind;
  switch (kind) {
    case ErrorKind::kInput:
      return FEDNER_ERR_INPUT;
    case ErrorKind::kConfig:
      return FEDNER_ERR_CONFIG;
    case ErrorKind::kNumeric:
      return FEDNER_ERR_NUMERIC;
    case ErrorKind::kCalibration:
      return FEDNER_ERR_CALIBRATION;
    case ErrorKind::kProtocol:
      return FEDNER_ERR_PROTOCOL;
    case ErrorKind::kParse:
      return FEDNER_ERR_PARSE;
    case ErrorKind::kIo:
      return FEDNER_ERR_IO;
    case ErrorKind::kVerifier:
      return FEDNER_ERR_VERIFIER;
  }
  return FEDNER_ERR_INTERNAL;
}

fedner_status Fail(fedner_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
fedner_status Guard(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return FEDNER_OK;
  } catch (const fedner::Error& e) {
    return Fail(StatusFor(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(FEDNER_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(FEDNER_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(FEDNER_ERR_INTERNAL, "unknown error");
  }
}

fedner_status NullArgument(const char* name) {
  return Fail(FEDNER_ERR_INVALID_ARGUMENT, std::string(name) + " is null");
}

template <typename Command>
fedner_status RunCommand(const fedner_config* config, const char* out_dir,
                         Command command) {
  if (!config) return NullArgument("config");
  if (!out_dir) return NullArgument("out_dir");
  return Guard([&] { command(config->value, std::filesystem::path(out_dir)); });
}

}  // namespace

extern "C" {

const char* fedner_last_error(void) { return g_last_error.c_str(); }

const char* fedner_status_name(fedner_status status) {
  switch (status) {
    case FEDNER_OK:
      return "ok";
    case FEDNER_ERR_INVALID_ARGUMENT:
      return "invalid_argument";
    case FEDNER_ERR_CONFIG:
      return "config";
    case FEDNER_ERR_INPUT:
      return "input";
    case FEDNER_ERR_PARSE:
      return "parse";
    case FEDNER_ERR_NUMERIC:
      return "numeric";
    case FEDNER_ERR_CALIBRATION:
      return "calibration";
    case FEDNER_ERR_PROTOCOL:
      return "protocol";
    case FEDNER_ERR_VERIFIER:
      return "verifier";
    case FEDNER_ERR_IO:
      return "io";
    case FEDNER_ERR_INTERNAL:
      return "internal";
  }
  return "unknown";
}

const char* fedner_version(void) { return fedner::bench::VersionString(); }

fedner_status fedner_config_default(fedner_config** out) {
  if (!out) return NullArgument("out");
  *out = nullptr;
  return Guard([&] { *out = new fedner_config{}; });
}

fedner_status fedner_config_load(const char* path, fedner_config** out) {
  if (!path) return NullArgument("path");
  if (!out) return NullArgument("out");
  *out = nullptr;
  return Guard([&] {
    *out = new fedner_config{fedner::bench::LoadConfig(path)};
  });
}

fedner_status fedner_config_parse(const char* json_text, fedner_config** out) {
  if (!json_text) return NullArgument("json_text");
  if (!out) return NullArgument("out");
  *out = nullptr;
  return Guard([&] {
    *out = new fedner_config{fedner::bench::ConfigFromJson(json_text)};
  });
}

void fedner_config_free(fedner_config* config) { delete config; }

fedner_status fedner_config_set_seed(fedner_config* config, uint64_t seed) {
  if (!config) return NullArgument("config");
  config->value.master_seed = seed;
  return FEDNER_OK;
}

fedner_status fedner_config_set_scenario(fedner_config* config,
                                         const char* scenario) {
  if (!config) return NullArgument("config");
  if (!scenario) return NullArgument("scenario");
  return Guard([&] {
    config->value.scenario = fedner::bench::ParseScenario(scenario);
  });
}

fedner_status fedner_config_set_epsilon(fedner_config* config, double epsilon) {
  if (!config) return NullArgument("config");
  return Guard([&] {
    fedner::bench::ExperimentConfig updated = config->value;
    updated.epsilon = epsilon;
    updated.Validate();
    config->value = std::move(updated);
  });
}

fedner_status fedner_config_set_silo_filter(fedner_config* config,
                                            const char* filter) {
  if (!config) return NullArgument("config");
  if (!filter) return NullArgument("filter");
  return Guard([&] {
    fedner::bench::ExperimentConfig updated = config->value;
    updated.silo_filter = fedner::bench::SiloFilter::Parse(filter);
    updated.Validate();
    config->value = std::move(updated);
  });
}

fedner_status fedner_config_to_json(const fedner_config* config, char** out) {
  if (!config) return NullArgument("config");
  if (!out) return NullArgument("out");
  *out = nullptr;
  return Guard([&] {
    const std::string text = fedner::bench::ConfigToJson(config->value);
    char* buf = new char[text.size() + 1];
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
  });
}

int fedner_config_is_private(const fedner_config* config) {
  return config && fedner::bench::IsPrivate(config->value.scenario) ? 1 : 0;
}

void fedner_string_free(char* s) { delete[] s; }

fedner_status fedner_generate_data(const fedner_config* config,
                                   const char* out_dir) {
  return RunCommand(config, out_dir, fedner::bench::GenerateDataCommand);
}

fedner_status fedner_run(const fedner_config* config, const char* out_dir) {
  return RunCommand(config, out_dir, fedner::bench::RunCommand);
}

fedner_status fedner_sweep_epsilon(const fedner_config* config,
                                   const char* out_dir) {
  return RunCommand(config, out_dir, fedner::bench::SweepEpsilonCommand);
}

fedner_status fedner_leave_one_out(const fedner_config* config,
                                   const char* out_dir) {
  return RunCommand(config, out_dir, fedner::bench::LeaveOneOutCommand);
}

fedner_status fedner_small_federation(const fedner_config* config,
                                      const char* out_dir) {
  return RunCommand(config, out_dir, fedner::bench::SmallFederationCommand);
}

fedner_status fedner_calibrate_sigma(const fedner_config* config,
                                     const char* out_dir) {
  return RunCommand(config, out_dir, fedner::bench::CalibrateSigmaCommand);
}

fedner_status fedner_report(const char* const* inputs, size_t input_count,
                            const char* out_dir) {
  if (!inputs && input_count > 0) return NullArgument("inputs");
  if (!out_dir) return NullArgument("out_dir");
  std::vector<std::filesystem::path> paths;
  for (size_t i = 0; i < input_count; ++i) {
    if (!inputs[i]) return NullArgument("inputs[i]");
    paths.emplace_back(inputs[i]);
  }
  return Guard([&] { fedner::bench::ReportCommand(paths, out_dir); });
}

fedner_status fedner_run_scenario(const fedner_config* config,
                                  fedner_result** out) {
  if (!config) return NullArgument("config");
  if (!out) return NullArgument("out");
  *out = nullptr;
  return Guard([&] {
    fedner::bench::Experiment experiment(config->value);
    auto table = fedner::bench::RunScenario(
        experiment, config->value.scenario, config->value.silo_filter);
    *out = new fedner_result{std::move(table)};
  });
}

size_t fedner_result_row_count(const fedner_result* result) {
  return result ? result->table.rows.size() : 0;
}

fedner_status fedner_result_row_at(const fedner_result* result, size_t index,
                                   fedner_result_row* out) {
  if (!result) return NullArgument("result");
  if (!out) return NullArgument("out");
  if (index >= result->table.rows.size()) {
    return Fail(FEDNER_ERR_INVALID_ARGUMENT, "row index out of range");
  }
  const fedner::bench::ResultRow& r = result->table.rows[index];
  out->silo_id = r.silo_id.c_str();
  out->scenario = r.scenario.c_str();
  out->mean_f1 = r.mean_f1;
  out->f1_b = r.f1_b;
  out->f1_i = r.f1_i;
  out->error_reduction = r.error_reduction;
  return FEDNER_OK;
}

double fedner_result_mean_f1(const fedner_result* result) {
  return result ? result->table.MeanF1() : 0.0;
}

void fedner_result_free(fedner_result* result) { delete result; }

fedner_status fedner_epsilon_for(double sigma, double q, int64_t steps,
                                 double delta, double* epsilon_out) {
  if (!epsilon_out) return NullArgument("epsilon_out");
  return Guard([&] {
    *epsilon_out = fedner::dpcore::EpsilonFor(sigma, q, steps, delta);
  });
}

fedner_status fedner_calibrate(double epsilon, double q, int64_t steps,
                               double delta, double* sigma_out,
                               double* achieved_out) {
  if (!sigma_out) return NullArgument("sigma_out");
  return Guard([&] {
    const auto r = fedner::dpcore::CalibrateSigma(epsilon, q, steps, delta);
    *sigma_out = r.sigma;
    if (achieved_out) *achieved_out = r.achieved_epsilon;
  });
}

double fedner_error_reduction(double f1, double f1_individual) {
  return fedner::bench::ErrorReduction(f1, f1_individual);
}

}  // extern "C"
