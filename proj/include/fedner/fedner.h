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

#ifndef FEDNER_FEDNER_H_
#define FEDNER_FEDNER_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define FEDNER_API __declspec(dllexport)
#else
#define FEDNER_API __attribute__((visibility("default")))
#endif

// Status codes. Every function that can fail returns one; on failure the
// message is available from fedner_last_error() on the same thread.
typedef enum fedner_status {
  FEDNER_OK = 0,
  FEDNER_ERR_INVALID_ARGUMENT = 1,  // null handle or pointer
  FEDNER_ERR_CONFIG = 2,
  FEDNER_ERR_INPUT = 3,
  FEDNER_ERR_PARSE = 4,
  FEDNER_ERR_NUMERIC = 5,
  FEDNER_ERR_CALIBRATION = 6,
  FEDNER_ERR_PROTOCOL = 7,
  FEDNER_ERR_VERIFIER = 8,
  FEDNER_ERR_IO = 9,
  FEDNER_ERR_INTERNAL = 10,
} fedner_status;

// Message of the most recent failure on this thread ("" if none). Valid
// until the next call into the library from this thread.
FEDNER_API const char* fedner_last_error(void);
FEDNER_API const char* fedner_status_name(fedner_status status);
FEDNER_API const char* fedner_version(void);

// ---- Experiment configuration --------------------------------------------

typedef struct fedner_config fedner_config;

// The built-in default benchmark configuration.
FEDNER_API fedner_status fedner_config_default(fedner_config** out);
FEDNER_API fedner_status fedner_config_load(const char* path,
                                            fedner_config** out);
FEDNER_API fedner_status fedner_config_parse(const char* json_text,
                                             fedner_config** out);
FEDNER_API void fedner_config_free(fedner_config* config);

FEDNER_API fedner_status fedner_config_set_seed(fedner_config* config,
                                                uint64_t seed);
// One of "individual", "fl", "ft-fl", "dp-fl", "ft-dp-fl".
FEDNER_API fedner_status fedner_config_set_scenario(fedner_config* config,
                                                    const char* scenario);
FEDNER_API fedner_status fedner_config_set_epsilon(fedner_config* config,
                                                   double epsilon);
// "all", "small-only" or "leave-out:<silo id>".
FEDNER_API fedner_status fedner_config_set_silo_filter(fedner_config* config,
                                                       const char* filter);
// Canonical JSON; the caller frees the string with fedner_string_free().
FEDNER_API fedner_status fedner_config_to_json(const fedner_config* config,
                                               char** out);
// Non-zero when the configured scenario is a private one.
FEDNER_API int fedner_config_is_private(const fedner_config* config);
FEDNER_API void fedner_string_free(char* s);

// ---- Commands -------------------------------------------------------------
// Each writes its artifacts and a manifest.json under out_dir.

FEDNER_API fedner_status fedner_generate_data(const fedner_config* config,
                                              const char* out_dir);
FEDNER_API fedner_status fedner_run(const fedner_config* config,
                                    const char* out_dir);
FEDNER_API fedner_status fedner_sweep_epsilon(const fedner_config* config,
                                              const char* out_dir);
FEDNER_API fedner_status fedner_leave_one_out(const fedner_config* config,
                                              const char* out_dir);
FEDNER_API fedner_status fedner_small_federation(const fedner_config* config,
                                                 const char* out_dir);
FEDNER_API fedner_status fedner_calibrate_sigma(const fedner_config* config,
                                                const char* out_dir);
// Merges results.csv files (or directories containing them).
FEDNER_API fedner_status fedner_report(const char* const* inputs,
                                       size_t input_count, const char* out_dir);

// ---- In-memory results ----------------------------------------------------

typedef struct fedner_result fedner_result;

typedef struct fedner_result_row {
  const char* silo_id;   // owned by the result
  const char* scenario;  // owned by the result
  double mean_f1;        // 0-100
  double f1_b;
  double f1_i;
  double error_reduction;  // percent
} fedner_result_row;

// Runs the configured scenario without writing files.
FEDNER_API fedner_status fedner_run_scenario(const fedner_config* config,
                                             fedner_result** out);
FEDNER_API size_t fedner_result_row_count(const fedner_result* result);
FEDNER_API fedner_status fedner_result_row_at(const fedner_result* result,
                                              size_t index,
                                              fedner_result_row* out);
FEDNER_API double fedner_result_mean_f1(const fedner_result* result);
FEDNER_API void fedner_result_free(fedner_result* result);

// ---- Privacy accounting ---------------------------------------------------

// Epsilon spent by `steps` sampled-Gaussian steps at noise multiplier
// `sigma` and sampling rate `q`.
FEDNER_API fedner_status fedner_epsilon_for(double sigma, double q,
                                            int64_t steps, double delta,
                                            double* epsilon_out);
// Smallest noise multiplier (to bisection tolerance) meeting `epsilon`.
FEDNER_API fedner_status fedner_calibrate(double epsilon, double q,
                                          int64_t steps, double delta,
                                          double* sigma_out,
                                          double* achieved_out);

// Percentage error reduction of `f1` over `f1_individual` (both 0-100).
FEDNER_API double fedner_error_reduction(double f1, double f1_individual);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // FEDNER_FEDNER_H_
