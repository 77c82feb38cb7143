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

#include "fedner/dpcore/calibration.h"

#include <cmath>
#include <sstream>

#include "fedner/common/error.h"

namespace fedner::dpcore {

CalibrationResult CalibrateSigma(double epsilon_target, double q,
                                 std::int64_t steps, double delta,
                                 const CalibrationOptions& options) {
  if (!(options.sigma_min > 0.0 && options.sigma_max > options.sigma_min)) {
    throw ConfigError("invalid sigma bracket");
  }
  const double floor = EpsilonFloor(delta, options.accountant.max_order);
  if (!(epsilon_target > floor)) {
    std::ostringstream msg;
    msg << "epsilon target " << epsilon_target
        << " is not above the accountant floor ln(1/delta)/max_order = "
        << floor;
    throw ConfigError(msg.str());
  }
  const auto eps_at = [&](double sigma) {
    return EpsilonFor(sigma, q, steps, delta, options.accountant);
  };

  CalibrationResult out;
  double lo = options.sigma_min;
  double hi = options.sigma_max;
  const double eps_lo = eps_at(lo);
  if (eps_lo <= epsilon_target) {
    out.sigma = lo;
    out.achieved_epsilon = eps_lo;
    return out;
  }
  double eps_hi = eps_at(hi);
  if (eps_hi > epsilon_target) {
    std::ostringstream msg;
    msg << "epsilon target " << epsilon_target
        << " unreachable for sigma in [" << lo << ", " << hi
        << "] (q=" << q << ", T=" << steps << ", delta=" << delta
        << "); feasible epsilon range is [" << eps_hi << ", " << eps_lo << "]";
    throw CalibrationError(msg.str(), eps_hi, eps_lo);
  }

  const double accept_below = epsilon_target * (1.0 - options.relative_slack);
  for (int it = 1; it <= options.max_iterations; ++it) {
    out.iterations = it;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double eps_mid = eps_at(mid);
    if (eps_mid <= epsilon_target) {
      hi = mid;
      eps_hi = eps_mid;
      if (eps_mid >= accept_below) break;
    } else {
      lo = mid;
    }
  }
  out.sigma = hi;
  out.achieved_epsilon = eps_hi;
  return out;
}

}  // namespace fedner::dpcore
