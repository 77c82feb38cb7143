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

#include "fedner/corpus/split.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "fedner/common/error.h"
#include "fedner/common/rng.h"

namespace fedner::corpus {

const char* SplitFileName(SplitName s) {
  switch (s) {
    case SplitName::kTrain:
      return "train";
    case SplitName::kValidation:
      return "validation";
    case SplitName::kTune:
      return "tune";
    case SplitName::kTest:
      return "test";
  }
  return "?";
}

namespace {

void CheckRatios(const SplitRatios& ratios) {
  double sum = 0.0;
  for (double r : ratios) {
    if (!(r >= 0.0)) throw ConfigError("split ratios must be non-negative");
    sum += r;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ConfigError("split ratios must sum to 1, got " + std::to_string(sum));
  }
}

}  // namespace

std::array<std::size_t, kNumSplits> SplitSizes(std::size_t n,
                                               const SplitRatios& ratios) {
  CheckRatios(ratios);
  std::array<std::size_t, kNumSplits> sizes{};
  std::array<double, kNumSplits> remainder{};
  std::size_t assigned = 0;
  for (int i = 0; i < kNumSplits; ++i) {
    const double exact = static_cast<double>(n) * ratios[i];
    sizes[i] = static_cast<std::size_t>(std::floor(exact + 1e-9));
    remainder[i] = exact - static_cast<double>(sizes[i]);
    assigned += sizes[i];
  }
  std::array<int, kNumSplits> order{0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return remainder[a] > remainder[b]; });
  for (int k = 0; assigned < n; k = (k + 1) % kNumSplits) {
    ++sizes[order[k]];
    ++assigned;
  }
  return sizes;
}

std::size_t MinimumSplittableSize(const SplitRatios& ratios) {
  for (std::size_t n = 1; n < 100000; ++n) {
    const auto sizes = SplitSizes(n, ratios);
    if (std::all_of(sizes.begin(), sizes.end(),
                    [](std::size_t s) { return s > 0; })) {
      return n;
    }
  }
  throw ConfigError("split ratios admit no non-empty assignment");
}

std::array<std::vector<std::size_t>, kNumSplits> SplitIndices(
    std::size_t n, const SplitRatios& ratios, std::uint64_t seed) {
  const auto sizes = SplitSizes(n, ratios);
  for (int i = 0; i < kNumSplits; ++i) {
    if (sizes[i] == 0) {
      throw InputError("too few sentences (" + std::to_string(n) +
                       ") for a non-empty " +
                       SplitFileName(static_cast<SplitName>(i)) + " split");
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::array<std::vector<std::size_t>, kNumSplits> out;
  std::size_t pos = 0;
  for (int i = 0; i < kNumSplits; ++i) {
    out[i].assign(order.begin() + static_cast<std::ptrdiff_t>(pos),
                  order.begin() + static_cast<std::ptrdiff_t>(pos + sizes[i]));
    pos += sizes[i];
  }
  return out;
}

std::size_t SiloDataset::TotalSentences() const {
  std::size_t n = 0;
  for (const auto& s : splits) n += s.size();
  return n;
}

SiloDataset Split(std::string silo_id,
                  std::span<const tagcore::Sentence> sentences,
                  const SplitRatios& ratios, std::uint64_t seed) {
  SiloDataset out;
  out.silo_id = std::move(silo_id);
  const auto idx = SplitIndices(sentences.size(), ratios, seed);
  for (int i = 0; i < kNumSplits; ++i) {
    out.splits[i].reserve(idx[i].size());
    for (std::size_t j : idx[i]) out.splits[i].push_back(sentences[j]);
  }
  return out;
}

}  // namespace fedner::corpus
