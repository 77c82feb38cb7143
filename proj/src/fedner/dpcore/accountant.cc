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

#include "fedner/dpcore/accountant.h"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>

#include "fedner/common/error.h"

namespace fedner::dpcore {
namespace {

constexpr std::size_t kWorkspaceLimit = 2000;
// Integrand values below exp(-kNegligibleLog) relative to the peak are
// dropped from the integration domain.
constexpr double kNegligibleLog = 60.0;

void DisableGslAbort() {
  static std::once_flag once;
  std::call_once(once, [] { gsl_set_error_handler_off(); });
}

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const {
    gsl_integration_workspace_free(w);
  }
};

enum class Moment { kE1, kE2 };

// Log integrand of E1 or E2, written in terms of
// r(z) = log(mu(z) / mu0(z)) = log((1 - q) + q exp((2z - 1) / (2 sigma^2))).
struct LogIntegrand {
  double q;
  double sigma;
  int lambda;
  Moment moment;
  double log_one_minus_q;
  double log_q;
  double log_norm;

  LogIntegrand(double q_in, double sigma_in, int lambda_in, Moment m)
      : q(q_in),
        sigma(sigma_in),
        lambda(lambda_in),
        moment(m),
        log_one_minus_q(q_in < 1.0 ? std::log1p(-q_in)
                                   : -std::numeric_limits<double>::infinity()),
        log_q(std::log(q_in)),
        log_norm(-std::log(sigma_in * std::sqrt(2.0 * M_PI))) {}

  double LogRatio(double z) const {
    const double t = (2.0 * z - 1.0) / (2.0 * sigma * sigma);
    const double b = log_q + t;
    if (q >= 1.0) return b;
    const double a = log_one_minus_q;
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(-std::abs(a - b)));
  }

  double operator()(double z) const {
    const double log_mu0 = -z * z / (2.0 * sigma * sigma) + log_norm;
    const double r = LogRatio(z);
    return moment == Moment::kE2 ? log_mu0 + (lambda + 1.0) * r
                                 : log_mu0 - lambda * r;
  }
};

struct ScaledIntegrand {
  const LogIntegrand* f;
  double shift;
};

double EvalScaled(double z, void* params) {
  const auto* s = static_cast<const ScaledIntegrand*>(params);
  return std::exp((*s->f)(z) - s->shift);
}

// Returns log of the integral of exp(f) over the relevant part of the domain.
double LogIntegral(const LogIntegrand& f, double relative_tolerance) {
  const double lo = -f.lambda - 20.0 * f.sigma;
  const double hi = f.lambda + 1.0 + 20.0 * f.sigma;

  // Locate the peak and the region where the integrand is non-negligible on
  // a grid fine enough to resolve features of width sigma.
  const double step = std::max(f.sigma / 8.0, (hi - lo) / 20000.0);
  const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / step));
  std::vector<double> grid_values(n + 1);
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= n; ++i) {
    const double z = std::min(hi, lo + step * static_cast<double>(i));
    grid_values[i] = f(z);
    peak = std::max(peak, grid_values[i]);
  }
  std::size_t first = n;
  std::size_t last = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    if (grid_values[i] >= peak - kNegligibleLog) {
      first = std::min(first, i);
      last = std::max(last, i);
    }
  }
  const double a = std::max(lo, lo + step * (static_cast<double>(first) - 1.0));
  const double b = std::min(hi, lo + step * (static_cast<double>(last) + 1.0));

  // Breakpoints every 2 sigma keep each Gauss-Kronrod panel well resolved.
  const auto pieces = static_cast<std::size_t>(
      std::clamp(std::ceil((b - a) / (2.0 * f.sigma)), 1.0, 512.0));
  std::vector<double> points(pieces + 1);
  for (std::size_t i = 0; i <= pieces; ++i) {
    points[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(pieces);
  }
  points.back() = b;

  DisableGslAbort();
  std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws(
      gsl_integration_workspace_alloc(kWorkspaceLimit));
  ScaledIntegrand scaled{&f, peak};
  gsl_function fn;
  fn.function = &EvalScaled;
  fn.params = &scaled;
  double result = 0.0;
  double abserr = 0.0;
  const int status =
      gsl_integration_qagp(&fn, points.data(), points.size(), 0.0,
                           relative_tolerance, kWorkspaceLimit, ws.get(),
                           &result, &abserr);
  if (status != GSL_SUCCESS || !(result > 0.0) || !std::isfinite(result)) {
    std::ostringstream msg;
    msg << "log-moment integration failed (" << gsl_strerror(status)
        << "): q=" << f.q << " sigma=" << f.sigma << " lambda=" << f.lambda
        << " moment=" << (f.moment == Moment::kE1 ? "E1" : "E2")
        << " domain=[" << a << ", " << b << "] result=" << result
        << " abserr=" << abserr;
    throw NumericError(msg.str());
  }
  return peak + std::log(result);
}

void CheckArguments(double q, double sigma) {
  if (!(q > 0.0 && q <= 1.0)) {
    throw ConfigError("sampling rate q must lie in (0, 1], got " +
                      std::to_string(q));
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ConfigError("sigma must be positive and finite, got " +
                      std::to_string(sigma));
  }
}

}  // namespace

double LogMoment(double q, double sigma, int lambda,
                 const AccountantOptions& options) {
  CheckArguments(q, sigma);
  if (lambda < 1) throw ConfigError("moment order must be >= 1");
  const double log_e1 = LogIntegral(LogIntegrand(q, sigma, lambda, Moment::kE1),
                                    options.relative_tolerance);
  const double log_e2 = LogIntegral(LogIntegrand(q, sigma, lambda, Moment::kE2),
                                    options.relative_tolerance);
  // Both moments are >= 1 by Jensen; clamp quadrature round-off.
  return std::max(0.0, std::max(log_e1, log_e2));
}

LogMomentTable ComputeLogMoments(double q, double sigma,
                                 const AccountantOptions& options) {
  CheckArguments(q, sigma);
  if (options.max_order < 1) throw ConfigError("max_order must be >= 1");
  LogMomentTable table;
  table.sampling_rate = q;
  table.sigma = sigma;
  table.values.reserve(static_cast<std::size_t>(options.max_order));
  for (int lambda = 1; lambda <= options.max_order; ++lambda) {
    table.values.push_back(LogMoment(q, sigma, lambda, options));
  }
  return table;
}

double EpsilonFromTable(const LogMomentTable& table, std::int64_t steps,
                        double delta) {
  if (steps < 0) throw ConfigError("step count must be >= 0");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ConfigError("delta must lie in (0, 1)");
  }
  const double log_inv_delta = -std::log(delta);
  double best = std::numeric_limits<double>::infinity();
  for (int lambda = 1; lambda <= table.max_order(); ++lambda) {
    const double eps =
        (static_cast<double>(steps) * table.at(lambda) + log_inv_delta) / lambda;
    best = std::min(best, eps);
  }
  return best;
}

double EpsilonFor(double sigma, double q, std::int64_t steps, double delta,
                  const AccountantOptions& options) {
  if (steps < 0) throw ConfigError("step count must be >= 0");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ConfigError("delta must lie in (0, 1)");
  }
  if (steps == 0) {
    CheckArguments(q, sigma);
    return EpsilonFloor(delta, options.max_order);
  }
  return EpsilonFromTable(ComputeLogMoments(q, sigma, options), steps, delta);
}

double EpsilonFloor(double delta, int max_order) {
  return -std::log(delta) / max_order;
}

}  // namespace fedner::dpcore
