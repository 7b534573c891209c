// Copyright (c) 2026 The sgvad Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sgvad/dsp/feature_io.h"

#include <string>

#include "sgvad/common/binary_io.h"
#include "sgvad/common/error.h"
#include "sgvad/common/file_util.h"

namespace sgvad::dsp {

void WriteMatrixDump(const std::filesystem::path& path, std::string_view magic,
                     const FeatureMatrix& m) {
  std::string out(magic);
  AppendU32(&out, static_cast<uint32_t>(m.channels()));
  AppendU32(&out, static_cast<uint32_t>(m.frames()));
  for (float v : m.values()) AppendF32(&out, v);
  WriteFileBytes(path, out);
}

FeatureMatrix ReadMatrixDump(const std::filesystem::path& path,
                             std::string_view magic) {
  const std::string bytes = ReadFileBytes(path);
  ByteReader reader(bytes, path.string());
  if (reader.Bytes(magic.size()) != magic) {
    throw Error(ErrorCode::kUnsupportedFormat,
                path.string() + ": expected magic " + std::string(magic));
  }
  const uint32_t channels = reader.U32();
  const uint32_t frames = reader.U32();
  if (reader.remaining() != uint64_t(channels) * frames * 4) {
    throw Error(ErrorCode::kCorruptFile, path.string() + ": size mismatch");
  }
  FeatureMatrix m(channels, frames);
  for (float& v : m.values()) v = reader.F32();
  return m;
}

}  // namespace sgvad::dsp
