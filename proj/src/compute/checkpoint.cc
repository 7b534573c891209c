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

#include "sgvad/compute/checkpoint.h"

#include <bit>

#include "sgvad/common/binary_io.h"
#include "sgvad/common/error.h"
#include "sgvad/common/file_util.h"

namespace sgvad::compute {
namespace {
constexpr std::string_view kMagic = "SGVD";
}

std::string SerializeTensors(const TensorList& tensors) {
  std::string out(kMagic);
  AppendU32(&out, kCheckpointVersion);
  AppendU32(&out, static_cast<uint32_t>(tensors.size()));
  for (const auto& t : tensors) {
    if (t.values.size() != NumElements(t.shape)) {
      throw Error(ErrorCode::kShapeMismatch, "tensor " + t.name +
                                                 " has inconsistent length");
    }
    AppendU32(&out, static_cast<uint32_t>(t.name.size()));
    out += t.name;
    AppendU32(&out, static_cast<uint32_t>(t.shape.size()));
    for (size_t d : t.shape) AppendU32(&out, static_cast<uint32_t>(d));
    for (float v : t.values) AppendF32(&out, v);
  }
  return out;
}

TensorList DeserializeTensors(const std::string& bytes,
                              const std::string& context) {
  ByteReader reader(bytes, context);
  if (reader.Bytes(4) != kMagic) {
    throw Error(ErrorCode::kUnsupportedFormat, context + ": not a checkpoint");
  }
  const uint32_t version = reader.U32();
  if (version != kCheckpointVersion) {
    throw Error(ErrorCode::kUnsupportedFormat,
                context + ": checkpoint version " + std::to_string(version));
  }
  const uint32_t count = reader.U32();
  TensorList list;
  list.reserve(count);
  for (uint32_t i = 0; i < count; ++i) {
    NamedTensor t;
    const uint32_t name_len = reader.U32();
    t.name = std::string(reader.Bytes(name_len));
    const uint32_t rank = reader.U32();
    for (uint32_t r = 0; r < rank; ++r) t.shape.push_back(reader.U32());
    const size_t n = NumElements(t.shape);
    if (n > reader.remaining() / 4) {
      throw Error(ErrorCode::kCorruptFile, context + ": truncated tensor " + t.name);
    }
    t.values.resize(n);
    for (float& v : t.values) v = reader.F32();
    list.push_back(std::move(t));
  }
  if (!reader.AtEnd()) {
    throw Error(ErrorCode::kCorruptFile, context + ": trailing bytes");
  }
  return list;
}

void SaveTensors(const std::filesystem::path& path, const TensorList& tensors) {
  WriteFileBytes(path, SerializeTensors(tensors));
}

TensorList LoadTensors(const std::filesystem::path& path) {
  return DeserializeTensors(ReadFileBytes(path), path.string());
}

const NamedTensor* FindTensor(const TensorList& list, const std::string& name) {
  for (const auto& t : list) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

NamedTensor PackU64(const std::string& name, uint64_t value) {
  return {name,
          {2},
          {std::bit_cast<float>(static_cast<uint32_t>(value)),
           std::bit_cast<float>(static_cast<uint32_t>(value >> 32))}};
}

uint64_t UnpackU64(const NamedTensor& t) {
  if (t.values.size() != 2) {
    throw Error(ErrorCode::kCorruptFile, "tensor " + t.name + " is not a u64");
  }
  return uint64_t(std::bit_cast<uint32_t>(t.values[0])) |
         (uint64_t(std::bit_cast<uint32_t>(t.values[1])) << 32);
}

}  // namespace sgvad::compute
