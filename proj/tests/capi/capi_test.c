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

/* Exercises the public C API from plain C, linking only the shared library. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "fedner/fedner.h"

static int failures = 0;

#define CHECK(cond)                                              \
  do {                                                           \
    if (!(cond)) {                                               \
      fprintf(stderr, "%s:%d: CHECK failed: %s (last error: %s)\n", \
              __FILE__, __LINE__, #cond, fedner_last_error());   \
      ++failures;                                                \
    }                                                            \
  } while (0)

static const char* kSmallConfig =
    "{\"corpus\": {\"silos\": ["
    "{\"id\": \"a\", \"sentences\": 500},"
    "{\"id\": \"b\", \"sentences\": 300},"
    "{\"id\": \"c\", \"sentences\": 200},"
    "{\"id\": \"d\", \"sentences\": 150},"
    "{\"id\": \"e\", \"sentences\": 120},"
    "{\"id\": \"f\", \"sentences\": 110}]},"
    " \"model\": {\"embedding_dim\": 4, \"hidden_dim\": 5},"
    " \"federation\": {\"rounds\": 2},"
    " \"fine_tune\": {\"max_epochs\": 2, \"patience\": 1}}";

static void TestStatusAndVersion(void) {
  CHECK(strcmp(fedner_status_name(FEDNER_OK), "ok") == 0);
  CHECK(strlen(fedner_version()) > 0);
  CHECK(fedner_config_default(NULL) == FEDNER_ERR_INVALID_ARGUMENT);
  CHECK(strlen(fedner_last_error()) > 0);
}

static void TestConfig(void) {
  fedner_config* cfg = NULL;
  char* json = NULL;
  CHECK(fedner_config_parse("{\"bogus\": 1}", &cfg) == FEDNER_ERR_CONFIG);
  CHECK(cfg == NULL);
  CHECK(strstr(fedner_last_error(), "bogus") != NULL);
  CHECK(fedner_config_load("/nonexistent/x.json", &cfg) == FEDNER_ERR_CONFIG);

  CHECK(fedner_config_parse(kSmallConfig, &cfg) == FEDNER_OK);
  CHECK(fedner_config_set_scenario(cfg, "ft-dp-fl") == FEDNER_OK);
  CHECK(fedner_config_is_private(cfg));
  CHECK(fedner_config_set_scenario(cfg, "central") == FEDNER_ERR_CONFIG);
  CHECK(fedner_config_set_epsilon(cfg, -1.0) == FEDNER_ERR_CONFIG);
  CHECK(fedner_config_set_epsilon(cfg, 3.0) == FEDNER_OK);
  CHECK(fedner_config_set_silo_filter(cfg, "leave-out:b") == FEDNER_OK);
  CHECK(fedner_config_set_silo_filter(cfg, "most") == FEDNER_ERR_CONFIG);
  CHECK(fedner_config_set_seed(cfg, 7) == FEDNER_OK);
  CHECK(fedner_config_to_json(cfg, &json) == FEDNER_OK);
  CHECK(json != NULL && strstr(json, "\"master_seed\": 7") != NULL);
  CHECK(json != NULL && strstr(json, "leave-out:b") != NULL);
  fedner_string_free(json);
  fedner_config_free(cfg);
  fedner_config_free(NULL);
}

static void TestRunScenario(void) {
  fedner_config* cfg = NULL;
  fedner_result* res = NULL;
  fedner_result* again = NULL;
  fedner_result_row row;
  size_t i;
  double sum = 0.0;
  CHECK(fedner_config_parse(kSmallConfig, &cfg) == FEDNER_OK);
  CHECK(fedner_config_set_scenario(cfg, "fl") == FEDNER_OK);
  CHECK(fedner_run_scenario(cfg, &res) == FEDNER_OK);
  CHECK(fedner_result_row_count(res) == 6);
  for (i = 0; i < fedner_result_row_count(res); ++i) {
    CHECK(fedner_result_row_at(res, i, &row) == FEDNER_OK);
    CHECK(strcmp(row.scenario, "fl") == 0);
    CHECK(row.mean_f1 >= 0.0 && row.mean_f1 <= 100.0);
    sum += row.mean_f1;
  }
  CHECK(fabs(fedner_result_mean_f1(res) - sum / 6.0) < 1e-9);
  CHECK(fedner_result_row_at(res, 6, &row) == FEDNER_ERR_INVALID_ARGUMENT);
  CHECK(fedner_run_scenario(cfg, &again) == FEDNER_OK);
  CHECK(fedner_result_mean_f1(again) == fedner_result_mean_f1(res));
  fedner_result_free(again);
  fedner_result_free(res);
  fedner_config_free(cfg);
}

static void TestAccounting(void) {
  double eps = 0.0, sigma = 0.0, achieved = 0.0;
  CHECK(fedner_epsilon_for(4.0, 0.01, 10000, 1e-5, &eps) == FEDNER_OK);
  CHECK(fabs(eps - 1.258575) < 5e-6);
  CHECK(fedner_epsilon_for(4.0, 1.5, 10, 1e-5, &eps) == FEDNER_ERR_CONFIG);
  CHECK(fedner_calibrate(2.0, 0.05, 400, 1e-5, &sigma, &achieved) == FEDNER_OK);
  CHECK(achieved <= 2.0 && achieved >= 2.0 * 0.999);
  CHECK(fedner_calibrate(0.001, 0.05, 400, 1e-5, &sigma, &achieved) !=
        FEDNER_OK);
  CHECK(fabs(fedner_error_reduction(90.40, 84.60) - 37.66) < 0.01);
}

int main(void) {
  TestStatusAndVersion();
  TestConfig();
  TestRunScenario();
  TestAccounting();
  if (failures) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return 1;
  }
  printf("capi: all checks passed\n");
  return 0;
}
