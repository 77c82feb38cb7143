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

#include "fedner/persona/parameter_file.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

#include "fedner/common/error.h"

namespace fedner::persona {
namespace {

template <typename T>
void PutLittleEndian(std::vector<char>& out, T value) {
  for (std::size_t b = 0; b < sizeof(T); ++b) {
    out.push_back(static_cast<char>((value >> (8 * b)) & 0xff));
  }
}

template <typename T>
T GetLittleEndian(const std::vector<char>& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size()) {
    throw ParseError("parameter file truncated", 0);
  }
  T value = 0;
  for (std::size_t b = 0; b < sizeof(T); ++b) {
    value |= static_cast<T>(static_cast<unsigned char>(in[pos + b])) << (8 * b);
  }
  pos += sizeof(T);
  return value;
}

}  // namespace

void WriteParameterFile(const tagcore::ParameterVector& params,
                        const std::filesystem::path& path) {
  std::vector<char> buf(std::begin(kParameterFileMagic),
                        std::end(kParameterFileMagic));
  PutLittleEndian<std::uint32_t>(buf, kParameterFileVersion);
  PutLittleEndian<std::uint32_t>(
      buf, static_cast<std::uint32_t>(params.layout_id().size()));
  buf.insert(buf.end(), params.layout_id().begin(), params.layout_id().end());
  PutLittleEndian<std::uint64_t>(buf, params.size());
  for (double v : params.values()) {
    PutLittleEndian<std::uint64_t>(buf, std::bit_cast<std::uint64_t>(v));
  }
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create " + path.parent_path().string());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

tagcore::ParameterVector ReadParameterFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const std::vector<char> buf((std::istreambuf_iterator<char>(in)),
                              std::istreambuf_iterator<char>());
  if (buf.size() < sizeof(kParameterFileMagic) ||
      std::memcmp(buf.data(), kParameterFileMagic, sizeof(kParameterFileMagic)) != 0) {
    throw ParseError("not a parameter file: " + path.string(), 0);
  }
  std::size_t pos = sizeof(kParameterFileMagic);
  const auto version = GetLittleEndian<std::uint32_t>(buf, pos);
  if (version != kParameterFileVersion) {
    throw ParseError("unsupported parameter file version " +
                         std::to_string(version),
                     0);
  }
  const auto id_len = GetLittleEndian<std::uint32_t>(buf, pos);
  if (pos + id_len > buf.size()) throw ParseError("parameter file truncated", 0);
  std::string layout(buf.begin() + static_cast<std::ptrdiff_t>(pos),
                     buf.begin() + static_cast<std::ptrdiff_t>(pos + id_len));
  pos += id_len;
  const auto count = GetLittleEndian<std::uint64_t>(buf, pos);
  if (buf.size() - pos != count * 8) {
    throw ParseError("parameter file size does not match its value count", 0);
  }
  std::vector<double> values(count);
  for (auto& v : values) {
    v = std::bit_cast<double>(GetLittleEndian<std::uint64_t>(buf, pos));
  }
  return tagcore::ParameterVector(std::move(layout), std::move(values));
}

}  // namespace fedner::persona
