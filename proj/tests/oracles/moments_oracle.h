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

#ifndef FEDNER_TESTS_ORACLES_MOMENTS_ORACLE_H_
#define FEDNER_TESTS_ORACLES_MOMENTS_ORACLE_H_

// Reference log moments of the sampled Gaussian mechanism by composite
// Simpson quadrature on a fixed uniform grid. Deliberately naive: no
// adaptivity, no breakpoints, just a wide interval and many points.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace fedner::oracle {

// log of the integral of exp(f) over [a, b] with n (even) Simpson panels.
template <typename LogIntegrand>
double LogSimpson(LogIntegrand f, double a, double b, std::int64_t n) {
  if (n % 2) ++n;
  const double h = (b - a) / static_cast<double>(n);
  std::vector<double> logs(static_cast<std::size_t>(n + 1));
  double peak = -INFINITY;
  for (std::int64_t i = 0; i <= n; ++i) {
    logs[static_cast<std::size_t>(i)] = f(a + h * static_cast<double>(i));
    peak = std::max(peak, logs[static_cast<std::size_t>(i)]);
  }
  double sum = 0.0;
  for (std::int64_t i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * std::exp(logs[static_cast<std::size_t>(i)] - peak);
  }
  return peak + std::log(sum * h / 3.0);
}

// alpha(lambda) = log max(E1, E2) with mu0 = N(0, s^2), mu1 = N(1, s^2),
// mu = (1 - q) mu0 + q mu1:
//   E1 = E_{z ~ mu0} [(mu0(z) / mu(z))^lambda]
//   E2 = E_{z ~ mu}  [(mu(z) / mu0(z))^lambda]
inline double SimpsonLogMoment(double q, double sigma, int lambda,
                               std::int64_t points = 1'000'000) {
  const double s2 = sigma * sigma;
  const double log_norm = -0.5 * std::log(2.0 * M_PI * s2);
  auto log_mu0 = [&](double z) { return log_norm - z * z / (2.0 * s2); };
  auto log_mu1 = [&](double z) {
    return log_norm - (z - 1.0) * (z - 1.0) / (2.0 * s2);
  };
  auto log_mu = [&](double z) {
    const double a = std::log1p(-q) + log_mu0(z);
    const double b = std::log(q) + log_mu1(z);
    if (q >= 1.0) return log_mu1(z);
    const double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m));
  };
  const double lo = -lambda - 1.0 - 14.0 * sigma;
  const double hi = lambda + 2.0 + 14.0 * sigma;
  const double log_e1 = LogSimpson(
      [&](double z) { return log_mu0(z) + lambda * (log_mu0(z) - log_mu(z)); },
      lo, hi, points);
  const double log_e2 = LogSimpson(
      [&](double z) { return log_mu(z) + lambda * (log_mu(z) - log_mu0(z)); },
      lo, hi, points);
  return std::max(log_e1, log_e2);
}

// Independent epsilon from a brute-force scan of integer orders.
template <typename Alpha>
double EpsilonByScan(Alpha alpha, std::int64_t steps, double delta,
                     int max_order) {
  double best = INFINITY;
  for (int l = 1; l <= max_order; ++l) {
    best = std::min(best, (steps * alpha(l) + std::log(1.0 / delta)) / l);
  }
  return std::max(best, 0.0);
}

}  // namespace fedner::oracle

#endif  // FEDNER_TESTS_ORACLES_MOMENTS_ORACLE_H_
