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

#ifndef SGVAD_COMPUTE_CHECKPOINT_H_
#define SGVAD_COMPUTE_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sgvad/compute/layers.h"

namespace sgvad::compute {

// File layout (little-endian): "SGVD", u32 version, u32 tensor count; per
// tensor: u32 name length, UTF-8 name, u32 rank, rank x u32 dims, float32
// values.
inline constexpr uint32_t kCheckpointVersion = 1;

struct NamedTensor {
  std::string name;
  Shape shape;
  std::vector<float> values;
};

using TensorList = std::vector<NamedTensor>;

std::string SerializeTensors(const TensorList& tensors);
TensorList DeserializeTensors(const std::string& bytes,
                              const std::string& context);
void SaveTensors(const std::filesystem::path& path, const TensorList& tensors);
TensorList LoadTensors(const std::filesystem::path& path);

const NamedTensor* FindTensor(const TensorList& list, const std::string& name);

// Stores raw 64-bit integers bit-exactly as two float32 words.
NamedTensor PackU64(const std::string& name, uint64_t value);
uint64_t UnpackU64(const NamedTensor& t);

enum class StateScope {
  kValues,        // parameters + running stats (inference export)
  kWithOptimizer  // + momentum buffers under "<name>.momentum"
};

// Appends the state of `refs` (cast to float32).
template <typename T>
void AppendState(const ParamRefs<T>& refs, StateScope scope, TensorList* out) {
  auto put = [&](const std::string& name, const Tensor<T>& t) {
    out->push_back({name, t.shape(), std::vector<float>(t.vec().begin(), t.vec().end())});
  };
  for (const auto* p : refs.params) put(p->name, p->value);
  for (const auto& b : refs.buffers) put(b.name, *b.tensor);
  if (scope == StateScope::kWithOptimizer) {
    for (const auto* p : refs.params) put(p->name + ".momentum", p->momentum);
  }
}

// Restores the state of `refs`. Every parameter and buffer must be present
// with a matching shape (Error{kShapeMismatch} / Error{kCorruptFile});
// momentum is restored when present and `scope` asks for it.
template <typename T>
void RestoreState(const TensorList& list, StateScope scope,
                  const ParamRefs<T>& refs) {
  auto get = [&](const std::string& name, Tensor<T>* dst, bool required) {
    const NamedTensor* t = FindTensor(list, name);
    if (!t) {
      if (required) {
        throw Error(ErrorCode::kCorruptFile, "checkpoint lacks tensor " + name);
      }
      return;
    }
    CheckShape(t->shape, dst->shape(), name.c_str());
    for (size_t i = 0; i < t->values.size(); ++i) {
      (*dst)[i] = static_cast<T>(t->values[i]);
    }
  };
  for (auto* p : refs.params) get(p->name, &p->value, true);
  for (const auto& b : refs.buffers) get(b.name, b.tensor, true);
  if (scope == StateScope::kWithOptimizer) {
    for (auto* p : refs.params) get(p->name + ".momentum", &p->momentum, true);
  }
}

}  // namespace sgvad::compute

#endif  // SGVAD_COMPUTE_CHECKPOINT_H_
