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

#ifndef FEDNER_TAGCORE_TAGGER_MODEL_H_
#define FEDNER_TAGCORE_TAGGER_MODEL_H_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fedner/common/rng.h"
#include "fedner/tagcore/parameter_vector.h"
#include "fedner/tagcore/sentence.h"

namespace fedner::tagcore {

// Shape of the window feed-forward tagger.
//
// A token at position t is represented by the concatenated embeddings of the
// tokens at t-radius .. t+radius (positions outside the sentence read the
// padding row kPadId). That window feeds one tanh hidden layer and a softmax
// over {B, I, O}.
//
// Flattening order of the parameter vector:
//   embeddings      vocab_size x embedding_dim   row-major by token id
//   hidden weights  window_width*embedding_dim x hidden_dim, row-major by input
//   hidden bias     hidden_dim
//   output weights  hidden_dim x 3, row-major by hidden unit
//   output bias     3
struct ModelShape {
  int vocab_size = 0;
  int embedding_dim = 16;
  int hidden_dim = 32;
  int window_radius = 2;

  int WindowWidth() const { return 2 * window_radius + 1; }
  int InputDim() const { return WindowWidth() * embedding_dim; }

  std::size_t EmbeddingOffset() const { return 0; }
  std::size_t HiddenWeightOffset() const;
  std::size_t HiddenBiasOffset() const;
  std::size_t OutputWeightOffset() const;
  std::size_t OutputBiasOffset() const;
  std::size_t ParameterCount() const;

  // Identifier binding a flattened vector to this shape.
  std::string LayoutId() const;

  // Throws ConfigError unless all dimensions are >= 1 (radius >= 0) and the
  // vocabulary holds at least the two reserved ids.
  void Validate() const;

  bool operator==(const ModelShape&) const = default;
};

using Probabilities = std::array<double, kNumTags>;

class TaggerModel {
 public:
  // All-zero parameters.
  explicit TaggerModel(const ModelShape& shape);
  // Throws ProtocolError if `parameters` has a different layout.
  TaggerModel(const ModelShape& shape, ParameterVector parameters);

  // Uniform Glorot-style init for the dense layers, small uniform
  // embeddings, zero biases.
  static TaggerModel Initialize(const ModelShape& shape, Rng& rng);

  const ModelShape& shape() const { return shape_; }
  const ParameterVector& parameters() const { return parameters_; }
  std::span<double> mutable_values() { return parameters_.mutable_values(); }
  void SetParameters(ParameterVector parameters);

  // Per-token probability triples. Throws InputError on out-of-range ids.
  std::vector<Probabilities> Forward(std::span<const TokenId> tokens) const;

  // Mean per-token cross-entropy of `sentence`. Adds `scale` times its
  // gradient into `grad`, which must have ParameterCount() entries.
  double AccumulateGradient(const Sentence& sentence, std::span<double> grad,
                            double scale = 1.0) const;

 private:
  ModelShape shape_;
  ParameterVector parameters_;
};

struct LossAndGradientResult {
  double loss = 0.0;
  ParameterVector gradient;
};

std::vector<Probabilities> Forward(const TaggerModel& model,
                                   const Sentence& sentence);

// Validates the sentence (InputError on malformed BIO) and returns its loss
// together with a freshly allocated gradient in the model's layout.
LossAndGradientResult LossAndGradient(const TaggerModel& model,
                                      const Sentence& sentence);

// argmax with ties resolved toward O, then B, then I.
Tag PredictTag(const Probabilities& p);

}  // namespace fedner::tagcore

#endif  // FEDNER_TAGCORE_TAGGER_MODEL_H_
