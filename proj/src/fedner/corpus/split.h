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

#ifndef FEDNER_CORPUS_SPLIT_H_
#define FEDNER_CORPUS_SPLIT_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fedner/tagcore/sentence.h"

namespace fedner::corpus {

enum class SplitName { kTrain = 0, kValidation = 1, kTune = 2, kTest = 3 };
inline constexpr int kNumSplits = 4;
const char* SplitFileName(SplitName s);  // "train", "validation", "tune", "test"

using SplitRatios = std::array<double, kNumSplits>;
inline constexpr SplitRatios kDefaultSplitRatios = {0.6, 0.1, 0.1, 0.2};

// Split sizes by largest-remainder rounding of n * ratio (ties go to the
// earlier split), so each size is within 1 of its exact share.
std::array<std::size_t, kNumSplits> SplitSizes(std::size_t n,
                                               const SplitRatios& ratios);

// Smallest n for which every split is non-empty under `ratios`.
std::size_t MinimumSplittableSize(const SplitRatios& ratios);

// Index assignment: seeded shuffle, then contiguous cut in split order.
// Throws ConfigError if the ratios do not sum to 1 (within 1e-9) and
// InputError if any split would be empty.
std::array<std::vector<std::size_t>, kNumSplits> SplitIndices(
    std::size_t n, const SplitRatios& ratios, std::uint64_t seed);

struct SiloDataset {
  std::string silo_id;
  std::array<std::vector<tagcore::Sentence>, kNumSplits> splits;

  const std::vector<tagcore::Sentence>& train() const { return splits[0]; }
  const std::vector<tagcore::Sentence>& validation() const { return splits[1]; }
  const std::vector<tagcore::Sentence>& tune() const { return splits[2]; }
  const std::vector<tagcore::Sentence>& test() const { return splits[3]; }
  std::size_t TotalSentences() const;
};

SiloDataset Split(std::string silo_id,
                  std::span<const tagcore::Sentence> sentences,
                  const SplitRatios& ratios, std::uint64_t seed);

}  // namespace fedner::corpus

#endif  // FEDNER_CORPUS_SPLIT_H_
