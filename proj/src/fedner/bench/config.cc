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

#include "fedner/bench/config.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "fedner/common/digest.h"
#include "fedner/common/error.h"
#include "json.hpp"

namespace fedner::bench {
namespace {

using nlohmann::json;

constexpr const char* kScenarioNames[] = {"individual", "fl", "ft-fl", "dp-fl",
                                          "ft-dp-fl"};

// Reads keys of one JSON object, rejecting any key that was not consumed.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + " must be an object");
  }

  template <typename T>
  void Read(const char* key, T& out) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) return;
    try {
      out = it->template get<T>();
    } catch (const json::exception&) {
      throw ConfigError(Field(key) + " has the wrong type");
    }
  }

  const json* Find(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  std::string Field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  void Finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) {
        throw ConfigError("unknown config key '" + Field(it.key()) + "'");
      }
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void ReadCorpus(const json& j, corpus::CorpusSpec& spec) {
  ObjectReader r(j, "corpus");
  r.Read("seed", spec.seed);
  r.Read("scale", spec.scale);
  r.Read("adverse_events", spec.adverse_events);
  r.Read("modifiers", spec.modifiers);
  r.Read("distractor_terms", spec.distractor_terms);
  r.Read("filler_words", spec.filler_words);
  r.Read("entities_per_sentence", spec.entities_per_sentence);
  r.Read("term_entity_probability", spec.term_entity_probability);
  r.Read("skew_min", spec.skew_min);
  r.Read("skew_max", spec.skew_max);
  if (const json* ratios = r.Find("split_ratios")) {
    ObjectReader rr(*ratios, "corpus.split_ratios");
    rr.Read("train", spec.split_ratios[0]);
    rr.Read("validation", spec.split_ratios[1]);
    rr.Read("tune", spec.split_ratios[2]);
    rr.Read("test", spec.split_ratios[3]);
    rr.Finish();
  }
  if (const json* silos = r.Find("silos")) {
    if (!silos->is_array()) throw ConfigError("corpus.silos must be an array");
    spec.silos.clear();
    for (std::size_t i = 0; i < silos->size(); ++i) {
      ObjectReader sr((*silos)[i], "corpus.silos[" + std::to_string(i) + "]");
      corpus::SiloProfile p;
      sr.Read("id", p.id);
      sr.Read("sentences", p.base_sentences);
      sr.Read("vaccine_names", p.vaccine_names);
      if (const json* skew = sr.Find("skew_exponent"); skew && !skew->is_null()) {
        if (!skew->is_number()) {
          throw ConfigError(sr.Field("skew_exponent") + " must be a number");
        }
        p.skew_exponent = skew->get<double>();
      }
      sr.Finish();
      spec.silos.push_back(std::move(p));
    }
  }
  r.Finish();
}

json CorpusToJson(const corpus::CorpusSpec& spec) {
  json silos = json::array();
  for (const corpus::SiloProfile& p : spec.silos) {
    json s = {{"id", p.id},
              {"sentences", p.base_sentences},
              {"vaccine_names", p.vaccine_names}};
    if (p.skew_exponent) s["skew_exponent"] = *p.skew_exponent;
    silos.push_back(std::move(s));
  }
  return {{"seed", spec.seed},
          {"scale", spec.scale},
          {"adverse_events", spec.adverse_events},
          {"modifiers", spec.modifiers},
          {"distractor_terms", spec.distractor_terms},
          {"filler_words", spec.filler_words},
          {"entities_per_sentence", spec.entities_per_sentence},
          {"term_entity_probability", spec.term_entity_probability},
          {"skew_min", spec.skew_min},
          {"skew_max", spec.skew_max},
          {"split_ratios",
           {{"train", spec.split_ratios[0]},
            {"validation", spec.split_ratios[1]},
            {"tune", spec.split_ratios[2]},
            {"test", spec.split_ratios[3]}}},
          {"silos", std::move(silos)}};
}

}  // namespace

const char* ScenarioName(Scenario s) {
  return kScenarioNames[static_cast<int>(s)];
}

Scenario ParseScenario(const std::string& name) {
  for (Scenario s : kAllScenarios) {
    if (name == ScenarioName(s)) return s;
  }
  throw ConfigError("unknown scenario '" + name +
                    "' (expected individual, fl, ft-fl, dp-fl or ft-dp-fl)");
}

bool IsPrivate(Scenario s) {
  return s == Scenario::kDpFl || s == Scenario::kFtDpFl;
}

bool IsFineTuned(Scenario s) {
  return s == Scenario::kFtFl || s == Scenario::kFtDpFl;
}

bool IsFederated(Scenario s) { return s != Scenario::kIndividual; }

Scenario BaseScenario(Scenario s) {
  switch (s) {
    case Scenario::kFtFl:
      return Scenario::kFl;
    case Scenario::kFtDpFl:
      return Scenario::kDpFl;
    default:
      return s;
  }
}

SiloFilter SiloFilter::Parse(const std::string& text) {
  if (text == "all") return All();
  if (text == "small-only") return SmallOnly();
  constexpr std::string_view kPrefix = "leave-out:";
  if (text.rfind(kPrefix, 0) == 0 && text.size() > kPrefix.size()) {
    return LeaveOut(text.substr(kPrefix.size()));
  }
  throw ConfigError("unknown silo filter '" + text +
                    "' (expected all, small-only or leave-out:<id>)");
}

std::string SiloFilter::ToString() const {
  switch (kind) {
    case Kind::kAll:
      return "all";
    case Kind::kSmallOnly:
      return "small-only";
    case Kind::kLeaveOut:
      return "leave-out:" + left_out;
  }
  return "all";
}

void ExperimentConfig::Validate() const {
  corpus.Validate();
  if (model.embedding_dim < 1 || model.hidden_dim < 1 ||
      model.window_radius < 0) {
    throw ConfigError("model dimensions must be positive");
  }
  if (!(model.dropout >= 0.0 && model.dropout < 1.0)) {
    throw ConfigError("model.dropout must lie in [0, 1)");
  }
  if (federation.rounds < 1) throw ConfigError("federation.rounds must be >= 1");
  if (federation.local_epochs < 1) {
    throw ConfigError("federation.local_epochs must be >= 1");
  }
  if (!(federation.learning_rate > 0.0)) {
    throw ConfigError("federation.learning_rate must be > 0");
  }
  if (federation.batch_size < 1) {
    throw ConfigError("federation.batch_size must be >= 1");
  }
  if (!(privacy.delta > 0.0 && privacy.delta < 1.0)) {
    throw ConfigError("privacy.delta must lie in (0, 1)");
  }
  if (!(privacy.clip_bound > 0.0)) {
    throw ConfigError("privacy.clip_bound must be > 0");
  }
  if (privacy.lot_size < 1) throw ConfigError("privacy.lot_size must be >= 1");
  if (!(privacy.learning_rate > 0.0)) {
    throw ConfigError("privacy.learning_rate must be > 0");
  }
  if (privacy.max_order < 1) throw ConfigError("privacy.max_order must be >= 1");
  if (!(privacy.sigma_min > 0.0 && privacy.sigma_max > privacy.sigma_min)) {
    throw ConfigError("privacy sigma range must satisfy 0 < min < max");
  }
  fine_tune.Validate();
  if (epsilon && !(*epsilon > 0.0 && std::isfinite(*epsilon))) {
    throw ConfigError("epsilon must be a positive finite number");
  }
  for (double e : epsilon_grid) {
    if (!(e > 0.0 && std::isfinite(e))) {
      throw ConfigError("epsilon_grid entries must be positive and finite");
    }
  }
  if (silo_filter.kind == SiloFilter::Kind::kLeaveOut) {
    bool found = false;
    for (const corpus::SiloProfile& p : corpus.silos) {
      found = found || p.id == silo_filter.left_out;
    }
    if (!found) {
      throw ConfigError("silo filter names unknown silo '" +
                        silo_filter.left_out + "'");
    }
    if (corpus.silos.size() < 2) {
      throw ConfigError("leave-out filter needs at least two silos");
    }
  }
  if (silo_filter.kind == SiloFilter::Kind::kSmallOnly &&
      corpus.silos.size() < 2) {
    throw ConfigError("small-only filter needs at least two silos");
  }
}

ExperimentConfig ConfigFromJson(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  ExperimentConfig cfg;
  ObjectReader r(j, "");
  r.Read("master_seed", cfg.master_seed);
  std::string scenario = ScenarioName(cfg.scenario);
  r.Read("scenario", scenario);
  cfg.scenario = ParseScenario(scenario);
  if (const json* eps = r.Find("epsilon"); eps && !eps->is_null()) {
    if (!eps->is_number()) throw ConfigError("epsilon must be a number");
    cfg.epsilon = eps->get<double>();
  }
  std::string filter = cfg.silo_filter.ToString();
  r.Read("silo_filter", filter);
  cfg.silo_filter = SiloFilter::Parse(filter);
  r.Read("epsilon_grid", cfg.epsilon_grid);
  r.Read("parallel_arms", cfg.parallel_arms);
  if (const json* c = r.Find("corpus")) ReadCorpus(*c, cfg.corpus);
  if (const json* m = r.Find("model")) {
    ObjectReader mr(*m, "model");
    mr.Read("embedding_dim", cfg.model.embedding_dim);
    mr.Read("hidden_dim", cfg.model.hidden_dim);
    mr.Read("window_radius", cfg.model.window_radius);
    mr.Read("dropout", cfg.model.dropout);
    mr.Finish();
  }
  if (const json* f = r.Find("federation")) {
    ObjectReader fr(*f, "federation");
    fr.Read("rounds", cfg.federation.rounds);
    fr.Read("local_epochs", cfg.federation.local_epochs);
    fr.Read("learning_rate", cfg.federation.learning_rate);
    fr.Read("batch_size", cfg.federation.batch_size);
    fr.Read("size_weighted", cfg.federation.size_weighted);
    fr.Read("parallel_silos", cfg.federation.parallel_silos);
    fr.Finish();
  }
  if (const json* p = r.Find("privacy")) {
    ObjectReader pr(*p, "privacy");
    pr.Read("delta", cfg.privacy.delta);
    pr.Read("clip_bound", cfg.privacy.clip_bound);
    pr.Read("lot_size", cfg.privacy.lot_size);
    pr.Read("learning_rate", cfg.privacy.learning_rate);
    pr.Read("max_order", cfg.privacy.max_order);
    pr.Read("sigma_min", cfg.privacy.sigma_min);
    pr.Read("sigma_max", cfg.privacy.sigma_max);
    pr.Finish();
  }
  if (const json* t = r.Find("fine_tune")) {
    ObjectReader tr(*t, "fine_tune");
    tr.Read("max_epochs", cfg.fine_tune.max_epochs);
    tr.Read("patience", cfg.fine_tune.patience);
    tr.Read("learning_rate", cfg.fine_tune.learning_rate);
    tr.Finish();
  }
  r.Finish();
  cfg.Validate();
  return cfg;
}

std::string ConfigToJson(const ExperimentConfig& cfg) {
  json j = {
      {"master_seed", cfg.master_seed},
      {"scenario", ScenarioName(cfg.scenario)},
      {"silo_filter", cfg.silo_filter.ToString()},
      {"epsilon_grid", cfg.epsilon_grid},
      {"parallel_arms", cfg.parallel_arms},
      {"corpus", CorpusToJson(cfg.corpus)},
      {"model",
       {{"embedding_dim", cfg.model.embedding_dim},
        {"hidden_dim", cfg.model.hidden_dim},
        {"window_radius", cfg.model.window_radius},
        {"dropout", cfg.model.dropout}}},
      {"federation",
       {{"rounds", cfg.federation.rounds},
        {"local_epochs", cfg.federation.local_epochs},
        {"learning_rate", cfg.federation.learning_rate},
        {"batch_size", cfg.federation.batch_size},
        {"size_weighted", cfg.federation.size_weighted},
        {"parallel_silos", cfg.federation.parallel_silos}}},
      {"privacy",
       {{"delta", cfg.privacy.delta},
        {"clip_bound", cfg.privacy.clip_bound},
        {"lot_size", cfg.privacy.lot_size},
        {"learning_rate", cfg.privacy.learning_rate},
        {"max_order", cfg.privacy.max_order},
        {"sigma_min", cfg.privacy.sigma_min},
        {"sigma_max", cfg.privacy.sigma_max}}},
      {"fine_tune",
       {{"max_epochs", cfg.fine_tune.max_epochs},
        {"patience", cfg.fine_tune.patience},
        {"learning_rate", cfg.fine_tune.learning_rate}}},
  };
  if (cfg.epsilon) j["epsilon"] = *cfg.epsilon;
  return j.dump(2) + "\n";
}

ExperimentConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  // A run manifest embeds the full config under "config".
  const json j = json::parse(text.str(), nullptr, /*allow_exceptions=*/false);
  if (j.is_object() && j.contains("tool") && j.contains("config") &&
      j["config"].is_object()) {
    return ConfigFromJson(j["config"].dump());
  }
  return ConfigFromJson(text.str());
}

std::string ConfigFingerprint(const ExperimentConfig& config) {
  const std::string text = ConfigToJson(config);
  return ToHex(Sha256Bytes(std::span(
      reinterpret_cast<const std::uint8_t*>(text.data()), text.size())));
}

}  // namespace fedner::bench
