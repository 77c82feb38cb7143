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

#ifndef FEDNER_DPCORE_ACCOUNTANT_H_
#define FEDNER_DPCORE_ACCOUNTANT_H_

#include <cstdint>
#include <vector>

namespace fedner::dpcore {

inline constexpr int kDefaultMaxOrder = 64;

struct AccountantOptions {
  int max_order = kDefaultMaxOrder;
  double relative_tolerance = 1e-10;
};

// Log moments alpha(1..max_order) of one step of the sampled Gaussian
// mechanism. values[i] holds the order i+1.
struct LogMomentTable {
  double sampling_rate = 0.0;
  double sigma = 0.0;
  std::vector<double> values;

  int max_order() const { return static_cast<int>(values.size()); }
  double at(int order) const { return values.at(static_cast<std::size_t>(order - 1)); }
};

// alpha(lambda) = log max(E1, E2) for mu0 = N(0, sigma^2), mu1 = N(1, sigma^2)
// and mu = (1 - q) mu0 + q mu1, where
//   E1 = E_{z ~ mu0} [(mu0(z) / mu(z))^lambda]
//   E2 = E_{z ~ mu}  [(mu(z) / mu0(z))^lambda].
// Both expectations are integrated adaptively (Gauss-Kronrod, global error
// control) in log-scaled form so that large orders neither overflow nor
// underflow. The integration domain is [-lambda - 20 sigma,
// lambda + 1 + 20 sigma], which contains both integrand peaks
// (at -lambda and lambda + 1 when q = 1) with 20 sigma of margin.
//
// Requires 0 < q <= 1, sigma > 0, lambda >= 1 (ConfigError otherwise).
// Throws NumericError when the quadrature does not converge.
double LogMoment(double q, double sigma, int lambda,
                 const AccountantOptions& options = {});

LogMomentTable ComputeLogMoments(double q, double sigma,
                                 const AccountantOptions& options = {});

// epsilon = min over lambda of (steps * alpha(lambda) + ln(1/delta)) / lambda.
// steps == 0 yields the floor ln(1/delta) / max_order.
double EpsilonFor(double sigma, double q, std::int64_t steps, double delta,
                  const AccountantOptions& options = {});

double EpsilonFromTable(const LogMomentTable& table, std::int64_t steps,
                        double delta);

// Smallest epsilon any sigma can achieve for the given delta.
double EpsilonFloor(double delta, int max_order = kDefaultMaxOrder);

}  // namespace fedner::dpcore

#endif  // FEDNER_DPCORE_ACCOUNTANT_H_
