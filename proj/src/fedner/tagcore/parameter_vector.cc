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

#include "fedner/tagcore/parameter_vector.h"

#include <cmath>
#include <cstring>

#include "fedner/common/error.h"

namespace fedner::tagcore {

void ParameterVector::CheckCompatible(const ParameterVector& other) const {
  if (layout_id_ != other.layout_id_ || values_.size() != other.values_.size()) {
    throw ProtocolError("parameter layout mismatch: '" + layout_id_ + "' (" +
                        std::to_string(values_.size()) + ") vs '" +
                        other.layout_id_ + "' (" +
                        std::to_string(other.values_.size()) + ")");
  }
}

ParameterVector& ParameterVector::operator+=(const ParameterVector& other) {
  CheckCompatible(other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

ParameterVector& ParameterVector::operator-=(const ParameterVector& other) {
  CheckCompatible(other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

ParameterVector& ParameterVector::operator*=(double factor) {
  for (double& v : values_) v *= factor;
  return *this;
}

void ParameterVector::AddScaled(const ParameterVector& other, double factor) {
  CheckCompatible(other);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    values_[i] += factor * other.values_[i];
  }
}

double ParameterVector::L2Norm() const {
  double sum = 0.0;
  for (double v : values_) sum += v * v;
  return std::sqrt(sum);
}

bool ParameterVector::AllFinite() const {
  for (double v : values_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

Sha256 ParameterVector::Digest() const {
  return Sha256Doubles(layout_id_, values_);
}

std::string ParameterVector::DigestHex() const { return ToHex(Digest()); }

bool ParameterVector::BitwiseEquals(const ParameterVector& other) const {
  return layout_id_ == other.layout_id_ &&
         values_.size() == other.values_.size() &&
         (values_.empty() ||
          std::memcmp(values_.data(), other.values_.data(),
                      values_.size() * sizeof(double)) == 0);
}

}  // namespace fedner::tagcore
