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

#include "fedner/tagcore/tagger_model.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "fedner/common/error.h"
#include "fedner/tagcore/vocabulary.h"

namespace fedner::tagcore {

std::size_t ModelShape::HiddenWeightOffset() const {
  return EmbeddingOffset() +
         static_cast<std::size_t>(vocab_size) * embedding_dim;
}
std::size_t ModelShape::HiddenBiasOffset() const {
  return HiddenWeightOffset() + static_cast<std::size_t>(InputDim()) * hidden_dim;
}
std::size_t ModelShape::OutputWeightOffset() const {
  return HiddenBiasOffset() + hidden_dim;
}
std::size_t ModelShape::OutputBiasOffset() const {
  return OutputWeightOffset() + static_cast<std::size_t>(hidden_dim) * kNumTags;
}
std::size_t ModelShape::ParameterCount() const {
  return OutputBiasOffset() + kNumTags;
}

std::string ModelShape::LayoutId() const {
  return "window-ffn/1:vocab=" + std::to_string(vocab_size) +
         ",emb=" + std::to_string(embedding_dim) +
         ",hidden=" + std::to_string(hidden_dim) +
         ",radius=" + std::to_string(window_radius);
}

void ModelShape::Validate() const {
  if (vocab_size < 2) {
    throw ConfigError("vocab_size must cover the padding and unknown ids");
  }
  if (embedding_dim < 1 || hidden_dim < 1) {
    throw ConfigError("embedding_dim and hidden_dim must be >= 1");
  }
  if (window_radius < 0) throw ConfigError("window_radius must be >= 0");
}

TaggerModel::TaggerModel(const ModelShape& shape)
    : shape_(shape),
      parameters_(ParameterVector::Zeros(shape.LayoutId(),
                                         shape.ParameterCount())) {
  shape_.Validate();
}

TaggerModel::TaggerModel(const ModelShape& shape, ParameterVector parameters)
    : TaggerModel(shape) {
  SetParameters(std::move(parameters));
}

void TaggerModel::SetParameters(ParameterVector parameters) {
  parameters_.CheckCompatible(parameters);
  parameters_ = std::move(parameters);
}

TaggerModel TaggerModel::Initialize(const ModelShape& shape, Rng& rng) {
  TaggerModel model(shape);
  std::span<double> v = model.mutable_values();
  std::uniform_real_distribution<double> emb(-0.1, 0.1);
  const double hidden_limit =
      std::sqrt(6.0 / (shape.InputDim() + shape.hidden_dim));
  const double output_limit = std::sqrt(6.0 / (shape.hidden_dim + kNumTags));
  std::uniform_real_distribution<double> hidden(-hidden_limit, hidden_limit);
  std::uniform_real_distribution<double> output(-output_limit, output_limit);
  for (std::size_t i = shape.EmbeddingOffset(); i < shape.HiddenWeightOffset();
       ++i) {
    v[i] = emb(rng);
  }
  for (std::size_t i = shape.HiddenWeightOffset(); i < shape.HiddenBiasOffset();
       ++i) {
    v[i] = hidden(rng);
  }
  for (std::size_t i = shape.OutputWeightOffset(); i < shape.OutputBiasOffset();
       ++i) {
    v[i] = output(rng);
  }
  return model;
}

namespace {

// Read-only views into a flat parameter array.
struct Views {
  const double* embeddings;
  const double* hidden_w;
  const double* hidden_b;
  const double* output_w;
  const double* output_b;

  Views(const ModelShape& s, std::span<const double> v)
      : embeddings(v.data() + s.EmbeddingOffset()),
        hidden_w(v.data() + s.HiddenWeightOffset()),
        hidden_b(v.data() + s.HiddenBiasOffset()),
        output_w(v.data() + s.OutputWeightOffset()),
        output_b(v.data() + s.OutputBiasOffset()) {}
};

TokenId WindowToken(std::span<const TokenId> tokens, std::ptrdiff_t pos) {
  if (pos < 0 || pos >= static_cast<std::ptrdiff_t>(tokens.size())) {
    return kPadId;
  }
  return tokens[static_cast<std::size_t>(pos)];
}

// Computes hidden activations and output probabilities for token t.
void ForwardToken(const ModelShape& s, const Views& w,
                  std::span<const TokenId> tokens, std::size_t t,
                  std::vector<double>& hidden, Probabilities& probs) {
  const int e_dim = s.embedding_dim;
  const int h_dim = s.hidden_dim;
  std::copy(w.hidden_b, w.hidden_b + h_dim, hidden.begin());
  for (int slot = 0; slot < s.WindowWidth(); ++slot) {
    const TokenId tok = WindowToken(
        tokens, static_cast<std::ptrdiff_t>(t) + slot - s.window_radius);
    const double* emb = w.embeddings + static_cast<std::size_t>(tok) * e_dim;
    for (int e = 0; e < e_dim; ++e) {
      const double x = emb[e];
      const double* row =
          w.hidden_w + static_cast<std::size_t>(slot * e_dim + e) * h_dim;
      for (int k = 0; k < h_dim; ++k) hidden[k] += x * row[k];
    }
  }
  for (int k = 0; k < h_dim; ++k) hidden[k] = std::tanh(hidden[k]);

  std::array<double, kNumTags> logits{};
  for (int c = 0; c < kNumTags; ++c) logits[c] = w.output_b[c];
  for (int k = 0; k < h_dim; ++k) {
    const double* row = w.output_w + static_cast<std::size_t>(k) * kNumTags;
    for (int c = 0; c < kNumTags; ++c) logits[c] += hidden[k] * row[c];
  }
  const double max_logit = *std::max_element(logits.begin(), logits.end());
  double total = 0.0;
  for (int c = 0; c < kNumTags; ++c) {
    probs[c] = std::exp(logits[c] - max_logit);
    total += probs[c];
  }
  for (int c = 0; c < kNumTags; ++c) probs[c] /= total;
}

}  // namespace

std::vector<Probabilities> TaggerModel::Forward(
    std::span<const TokenId> tokens) const {
  ValidateTokens(tokens, shape_.vocab_size);
  const Views w(shape_, parameters_.values());
  std::vector<double> hidden(static_cast<std::size_t>(shape_.hidden_dim));
  std::vector<Probabilities> out(tokens.size());
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    ForwardToken(shape_, w, tokens, t, hidden, out[t]);
  }
  return out;
}

double TaggerModel::AccumulateGradient(const Sentence& sentence,
                                       std::span<double> grad,
                                       double scale) const {
  if (grad.size() != parameters_.size()) {
    throw ProtocolError("gradient buffer does not match model layout");
  }
  ValidateTokens(sentence.tokens, shape_.vocab_size);
  const std::span<const TokenId> tokens = sentence.tokens;
  const int e_dim = shape_.embedding_dim;
  const int h_dim = shape_.hidden_dim;
  const Views w(shape_, parameters_.values());
  double* g_emb = grad.data() + shape_.EmbeddingOffset();
  double* g_hw = grad.data() + shape_.HiddenWeightOffset();
  double* g_hb = grad.data() + shape_.HiddenBiasOffset();
  double* g_ow = grad.data() + shape_.OutputWeightOffset();
  double* g_ob = grad.data() + shape_.OutputBiasOffset();

  std::vector<double> hidden(static_cast<std::size_t>(h_dim));
  std::vector<double> d_pre(static_cast<std::size_t>(h_dim));
  Probabilities probs{};
  const double token_weight = scale / static_cast<double>(tokens.size());
  double loss = 0.0;

  for (std::size_t t = 0; t < tokens.size(); ++t) {
    ForwardToken(shape_, w, tokens, t, hidden, probs);
    const int gold = TagIndex(sentence.labels[t]);
    loss -= std::log(probs[gold]);

    std::array<double, kNumTags> d_logit{};
    for (int c = 0; c < kNumTags; ++c) {
      d_logit[c] = (probs[c] - (c == gold ? 1.0 : 0.0)) * token_weight;
      g_ob[c] += d_logit[c];
    }
    for (int k = 0; k < h_dim; ++k) {
      const double* row = w.output_w + static_cast<std::size_t>(k) * kNumTags;
      double* g_row = g_ow + static_cast<std::size_t>(k) * kNumTags;
      double d_h = 0.0;
      for (int c = 0; c < kNumTags; ++c) {
        g_row[c] += hidden[k] * d_logit[c];
        d_h += row[c] * d_logit[c];
      }
      d_pre[k] = d_h * (1.0 - hidden[k] * hidden[k]);
      g_hb[k] += d_pre[k];
    }
    for (int slot = 0; slot < shape_.WindowWidth(); ++slot) {
      const TokenId tok = WindowToken(
          tokens, static_cast<std::ptrdiff_t>(t) + slot - shape_.window_radius);
      const std::size_t emb_base = static_cast<std::size_t>(tok) * e_dim;
      const double* emb = w.embeddings + emb_base;
      for (int e = 0; e < e_dim; ++e) {
        const std::size_t in = static_cast<std::size_t>(slot * e_dim + e);
        const double* row = w.hidden_w + in * h_dim;
        double* g_row = g_hw + in * h_dim;
        const double x = emb[e];
        double d_x = 0.0;
        for (int k = 0; k < h_dim; ++k) {
          g_row[k] += x * d_pre[k];
          d_x += row[k] * d_pre[k];
        }
        g_emb[emb_base + e] += d_x;
      }
    }
  }
  return loss / static_cast<double>(tokens.size());
}

std::vector<Probabilities> Forward(const TaggerModel& model,
                                   const Sentence& sentence) {
  return model.Forward(sentence.tokens);
}

LossAndGradientResult LossAndGradient(const TaggerModel& model,
                                      const Sentence& sentence) {
  ValidateSentence(sentence);
  LossAndGradientResult out;
  out.gradient = ParameterVector::Zeros(model.parameters().layout_id(),
                                        model.parameters().size());
  out.loss = model.AccumulateGradient(sentence, out.gradient.mutable_values());
  return out;
}

Tag PredictTag(const Probabilities& p) {
  const double b = p[TagIndex(Tag::kB)];
  const double i = p[TagIndex(Tag::kI)];
  const double o = p[TagIndex(Tag::kO)];
  if (o >= b && o >= i) return Tag::kO;
  if (b >= i) return Tag::kB;
  return Tag::kI;
}

}  // namespace fedner::tagcore
