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

#ifndef FEDNER_COMMON_ERROR_H_
#define FEDNER_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace fedner {

// Every failure raised by the core derives from Error and carries a kind so
// the C API and CLI can map it to a stable code without string matching.
enum class ErrorKind {
  kInput,        // malformed data handed to an operation
  kConfig,       // invalid configuration or parameters
  kNumeric,      // numerical routine failed to converge
  kCalibration,  // privacy budget unreachable within the sigma bracket
  kProtocol,     // federation protocol violation (layout mismatch, ...)
  kParse,        // malformed file contents
  kIo,           // filesystem failure
  kVerifier,     // transcript verifier given incomparable runs
};

const char* ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& m) : Error(ErrorKind::kInput, m) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& m) : Error(ErrorKind::kConfig, m) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& m)
      : Error(ErrorKind::kNumeric, m) {}
};

class CalibrationError : public Error {
 public:
  CalibrationError(const std::string& m, double feasible_min,
                   double feasible_max)
      : Error(ErrorKind::kCalibration, m),
        feasible_min_(feasible_min),
        feasible_max_(feasible_max) {}

  // Range of epsilon values reachable with sigma inside the bracket.
  double feasible_min() const { return feasible_min_; }
  double feasible_max() const { return feasible_max_; }

 private:
  double feasible_min_;
  double feasible_max_;
};

class ProtocolError : public Error {
 public:
  explicit ProtocolError(const std::string& m)
      : Error(ErrorKind::kProtocol, m) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& m, std::size_t line)
      : Error(ErrorKind::kParse, m), line_(line) {}

  // 1-based line number of the offending input line; 0 if not applicable.
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& m) : Error(ErrorKind::kIo, m) {}
};

class VerifierError : public Error {
 public:
  explicit VerifierError(const std::string& m)
      : Error(ErrorKind::kVerifier, m) {}
};

}  // namespace fedner

#endif  // FEDNER_COMMON_ERROR_H_
