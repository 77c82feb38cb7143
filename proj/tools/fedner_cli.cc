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

// Command-line front end. Talks to the library only through the C API.

#include <cstdint>
#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fedner/fedner.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct ConfigDeleter {
  void operator()(fedner_config* c) const { fedner_config_free(c); }
};
using ConfigPtr = std::unique_ptr<fedner_config, ConfigDeleter>;

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out = "out";
  std::optional<std::string> scenario;
  std::optional<double> epsilon;
  std::optional<std::string> silo_filter;
  std::vector<std::string> inputs;
};

int ExitCodeFor(fedner_status status) {
  switch (status) {
    case FEDNER_OK:
      return kExitOk;
    case FEDNER_ERR_CONFIG:
    case FEDNER_ERR_INVALID_ARGUMENT:
      return kExitConfig;
    default:
      return kExitRuntime;
  }
}

int Report(fedner_status status, const char* what) {
  if (status == FEDNER_OK) return kExitOk;
  std::fprintf(stderr, "fedner: %s failed (%s): %s\n", what,
               fedner_status_name(status), fedner_last_error());
  return ExitCodeFor(status);
}

int ConfigError(const std::string& message) {
  std::fprintf(stderr, "fedner: %s\n", message.c_str());
  return kExitConfig;
}

// Loads the config and applies command-line overrides.
int BuildConfig(const Options& opt, ConfigPtr& out) {
  fedner_config* raw = nullptr;
  fedner_status s = opt.config_path.empty()
                        ? fedner_config_default(&raw)
                        : fedner_config_load(opt.config_path.c_str(), &raw);
  if (s != FEDNER_OK) return Report(s, "loading config");
  out.reset(raw);
  if (opt.seed) {
    if ((s = fedner_config_set_seed(raw, *opt.seed)) != FEDNER_OK) {
      return Report(s, "--seed");
    }
  }
  if (opt.scenario) {
    s = fedner_config_set_scenario(raw, opt.scenario->c_str());
    if (s != FEDNER_OK) return Report(s, "--scenario");
  }
  if (opt.epsilon) {
    if ((s = fedner_config_set_epsilon(raw, *opt.epsilon)) != FEDNER_OK) {
      return Report(s, "--epsilon");
    }
  }
  if (opt.silo_filter) {
    s = fedner_config_set_silo_filter(raw, opt.silo_filter->c_str());
    if (s != FEDNER_OK) return Report(s, "--silo-filter");
  }
  return kExitOk;
}

void AddCommonFlags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--config", opt.config_path, "Experiment config (JSON)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", opt.seed, "Master seed override");
  cmd->add_option("--out", opt.out, "Output directory")->capture_default_str();
  cmd->add_option("--silo-filter", opt.silo_filter,
                  "all | small-only | leave-out:<id>");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-silo federated NER simulator"};
  app.set_version_flag("--version", std::string(fedner_version()));
  app.require_subcommand(1);

  Options opt;
  auto* generate = app.add_subcommand("generate-data",
                                      "Write the synthetic corpus as CoNLL");
  auto* run = app.add_subcommand("run", "Run one scenario");
  auto* sweep = app.add_subcommand("sweep-epsilon",
                                   "DP-FL and FT-DP-FL over the epsilon grid");
  auto* loo = app.add_subcommand("leave-one-out", "FL leave-one-out matrix");
  auto* small = app.add_subcommand("small-federation",
                                   "Small-silo federation versus full");
  auto* calibrate = app.add_subcommand("calibrate-sigma",
                                       "Per-silo noise multipliers");
  auto* report = app.add_subcommand("report",
                                    "Merge result CSVs into one report");

  for (CLI::App* cmd : {generate, run, sweep, loo, small, calibrate}) {
    AddCommonFlags(cmd, opt);
  }
  run->add_option("--scenario", opt.scenario,
                  "individual | fl | ft-fl | dp-fl | ft-dp-fl");
  for (CLI::App* cmd : {run, sweep, small, calibrate}) {
    cmd->add_option("--epsilon", opt.epsilon, "Target epsilon");
  }
  report->add_option("inputs", opt.inputs, "results.csv files or directories")
      ->required();
  report->add_option("--out", opt.out, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (report->parsed()) {
    std::vector<const char*> inputs;
    for (const std::string& s : opt.inputs) inputs.push_back(s.c_str());
    return Report(fedner_report(inputs.data(), inputs.size(), opt.out.c_str()),
                  "report");
  }

  ConfigPtr config;
  if (int rc = BuildConfig(opt, config); rc != kExitOk) return rc;

  if (run->parsed() && opt.epsilon && !fedner_config_is_private(config.get())) {
    return ConfigError("--epsilon applies only to dp-fl and ft-dp-fl");
  }

  fedner_status status = FEDNER_OK;
  const char* verb = "";
  if (generate->parsed()) {
    verb = "generate-data";
    status = fedner_generate_data(config.get(), opt.out.c_str());
  } else if (run->parsed()) {
    verb = "run";
    status = fedner_run(config.get(), opt.out.c_str());
  } else if (sweep->parsed()) {
    verb = "sweep-epsilon";
    status = fedner_sweep_epsilon(config.get(), opt.out.c_str());
  } else if (loo->parsed()) {
    verb = "leave-one-out";
    status = fedner_leave_one_out(config.get(), opt.out.c_str());
  } else if (small->parsed()) {
    verb = "small-federation";
    status = fedner_small_federation(config.get(), opt.out.c_str());
  } else if (calibrate->parsed()) {
    verb = "calibrate-sigma";
    status = fedner_calibrate_sigma(config.get(), opt.out.c_str());
  }
  if (status == FEDNER_OK) {
    std::printf("%s: wrote %s\n", verb, opt.out.c_str());
  }
  return Report(status, verb);
}
