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

#include "fedner/common/error.h"

namespace fedner {

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInput:
      return "input error";
    case ErrorKind::kConfig:
      return "config error";
    case ErrorKind::kNumeric:
      return "numeric error";
    case ErrorKind::kCalibration:
      return "calibration error";
    case ErrorKind::kProtocol:
      return "protocol error";
    case ErrorKind::kParse:
      return "parse error";
    case ErrorKind::kIo:
      return "io error";
    case ErrorKind::kVerifier:
      return "verifier error";
  }
  return "error";
}

}  // namespace fedner
