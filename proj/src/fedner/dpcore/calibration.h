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

#ifndef FEDNER_DPCORE_CALIBRATION_H_
#define FEDNER_DPCORE_CALIBRATION_H_

#include <cstdint>

#include "fedner/dpcore/accountant.h"

namespace fedner::dpcore {

struct CalibrationOptions {
  double sigma_min = 0.3;
  double sigma_max = 500.0;
  // Accept sigma once the achieved epsilon is within this relative distance
  // below the target.
  double relative_slack = 1e-3;
  int max_iterations = 200;
  AccountantOptions accountant;
};

struct CalibrationResult {
  double sigma = 0.0;
  double achieved_epsilon = 0.0;
  int iterations = 0;
};

// Bisects sigma in [sigma_min, sigma_max] until
// EpsilonFor(sigma) lies in [target (1 - slack), target].
//
// Throws ConfigError for a target at or below the accountant floor and
// CalibrationError (carrying the feasible epsilon range) when even sigma_max
// cannot meet the target. If sigma_min already meets the target it is
// returned as is, with the achieved epsilon possibly below the slack window.
CalibrationResult CalibrateSigma(double epsilon_target, double q,
                                 std::int64_t steps, double delta,
                                 const CalibrationOptions& options = {});

}  // namespace fedner::dpcore

#endif  // FEDNER_DPCORE_CALIBRATION_H_
