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

#ifndef FEDNER_TESTS_ORACLES_TAGGER_ORACLE_H_
#define FEDNER_TESTS_ORACLES_TAGGER_ORACLE_H_

// Straight-line recomputation of the window tagger from a flat parameter
// array, with the layout written out by hand, plus a central-difference
// gradient.

#include <array>
#include <cmath>
#include <functional>
#include <vector>

namespace fedner::oracle {

struct Dims {
  int vocab;
  int emb;
  int hidden;
  int radius;
};

// probs[t][c] for labels c = B, I, O.
inline std::vector<std::array<double, 3>> NaiveForward(
    const Dims& d, const std::vector<double>& p, const std::vector<int>& tokens) {
  const int width = 2 * d.radius + 1;
  const int in_dim = width * d.emb;
  const std::size_t w1 = static_cast<std::size_t>(d.vocab) * d.emb;
  const std::size_t b1 = w1 + static_cast<std::size_t>(in_dim) * d.hidden;
  const std::size_t w2 = b1 + d.hidden;
  const std::size_t b2 = w2 + static_cast<std::size_t>(d.hidden) * 3;
  const int n = static_cast<int>(tokens.size());
  std::vector<std::array<double, 3>> out;
  for (int t = 0; t < n; ++t) {
    std::vector<double> x;
    for (int j = t - d.radius; j <= t + d.radius; ++j) {
      const int tok = (j < 0 || j >= n) ? 0 : tokens[j];
      for (int e = 0; e < d.emb; ++e) x.push_back(p[tok * d.emb + e]);
    }
    std::vector<double> h(d.hidden);
    for (int k = 0; k < d.hidden; ++k) {
      double a = p[b1 + k];
      for (int i = 0; i < in_dim; ++i) a += x[i] * p[w1 + i * d.hidden + k];
      h[k] = std::tanh(a);
    }
    std::array<double, 3> z{};
    double denom = 0.0;
    for (int c = 0; c < 3; ++c) {
      double a = p[b2 + c];
      for (int k = 0; k < d.hidden; ++k) a += h[k] * p[w2 + k * 3 + c];
      z[c] = std::exp(a);
      denom += z[c];
    }
    for (double& v : z) v /= denom;
    out.push_back(z);
  }
  return out;
}

inline double NaiveLoss(const Dims& d, const std::vector<double>& p,
                        const std::vector<int>& tokens,
                        const std::vector<int>& labels) {
  const auto probs = NaiveForward(d, p, tokens);
  double loss = 0.0;
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    loss -= std::log(probs[t][labels[t]]);
  }
  return loss / static_cast<double>(tokens.size());
}

inline std::vector<double> CentralDifference(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x, double h) {
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double orig = x[i];
    x[i] = orig + h;
    const double up = f(x);
    x[i] = orig - h;
    const double down = f(x);
    x[i] = orig;
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

}  // namespace fedner::oracle

#endif  // FEDNER_TESTS_ORACLES_TAGGER_ORACLE_H_
