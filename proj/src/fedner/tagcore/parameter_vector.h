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

#ifndef FEDNER_TAGCORE_PARAMETER_VECTOR_H_
#define FEDNER_TAGCORE_PARAMETER_VECTOR_H_

#include <span>
#include <string>
#include <vector>

#include "fedner/common/digest.h"

namespace fedner::tagcore {

// Flat parameter (or gradient) storage. The layout id names the model shape
// whose flattening order produced the values; arithmetic between vectors of
// different layouts is a protocol error.
class ParameterVector {
 public:
  ParameterVector() = default;
  ParameterVector(std::string layout_id, std::vector<double> values)
      : layout_id_(std::move(layout_id)), values_(std::move(values)) {}

  static ParameterVector Zeros(std::string layout_id, std::size_t n) {
    return ParameterVector(std::move(layout_id), std::vector<double>(n, 0.0));
  }

  const std::string& layout_id() const { return layout_id_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  std::span<double> mutable_values() { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  ParameterVector& operator+=(const ParameterVector& other);
  ParameterVector& operator-=(const ParameterVector& other);
  ParameterVector& operator*=(double factor);
  // this += factor * other
  void AddScaled(const ParameterVector& other, double factor);

  double L2Norm() const;
  bool AllFinite() const;

  // SHA-256 of layout id and little-endian values.
  Sha256 Digest() const;
  std::string DigestHex() const;

  // Bitwise equality of values plus equal layout ids.
  bool BitwiseEquals(const ParameterVector& other) const;

  // Throws ProtocolError when layouts or sizes differ.
  void CheckCompatible(const ParameterVector& other) const;

 private:
  std::string layout_id_;
  std::vector<double> values_;
};

}  // namespace fedner::tagcore

#endif  // FEDNER_TAGCORE_PARAMETER_VECTOR_H_
