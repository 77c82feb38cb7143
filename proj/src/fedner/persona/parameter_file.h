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

#ifndef FEDNER_PERSONA_PARAMETER_FILE_H_
#define FEDNER_PERSONA_PARAMETER_FILE_H_

#include <filesystem>

#include "fedner/tagcore/parameter_vector.h"

namespace fedner::persona {

// Versioned binary parameter file, all integers little-endian:
//   8 bytes   magic "FEDNERPV"
//   u32       format version (1)
//   u32       layout id length n
//   n bytes   layout id (UTF-8)
//   u64       value count m
//   m x f64   IEEE-754 values
inline constexpr char kParameterFileMagic[8] = {'F', 'E', 'D', 'N',
                                                'E', 'R', 'P', 'V'};
inline constexpr std::uint32_t kParameterFileVersion = 1;

void WriteParameterFile(const tagcore::ParameterVector& params,
                        const std::filesystem::path& path);
// Throws IoError if unreadable and ParseError on a malformed file.
tagcore::ParameterVector ReadParameterFile(const std::filesystem::path& path);

}  // namespace fedner::persona

#endif  // FEDNER_PERSONA_PARAMETER_FILE_H_
