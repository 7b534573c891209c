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

#ifndef SGVAD_TRAIN_CONFIG_H_
#define SGVAD_TRAIN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "sgvad/compute/optim.h"
#include "sgvad/dsp/augment.h"

namespace sgvad::train {

// Ablation settings:
//   kFull              CE + L_sg on background samples only
//   kRegression        gate network alone, MSE between score/32 and speech
//   kNoLsg             CE only (gate network + classifier)
//   kUnconditionalLsg  CE + L_sg on every sample
enum class TrainMode { kFull, kRegression, kNoLsg, kUnconditionalLsg };

const char* TrainModeName(TrainMode mode);
// Accepts full | regression | no_lsg | unconditional_lsg.
TrainMode ParseTrainMode(std::string_view name);

struct TrainConfig {
  int epochs = 150;
  int batch_size = 128;
  compute::SgdConfig sgd;
  // total_steps is derived from epochs and the training-set size.
  compute::LrSchedule sched;
  dsp::AugmentConfig augment;
  TrainMode mode = TrainMode::kFull;
  uint64_t seed = 0;
  double max_background_s = 0.63;
  double crop_s = 0.63;
  size_t n_classes = 36;
  double sigma = 0.5;

  void Validate() const;
  // Canonical `key = value` text covering every field.
  std::string ToText() const;
  uint64_t Hash() const;
};

// Parses `key = value` lines; '#' starts a comment. Unknown keys, duplicate
// keys and malformed values raise Error{kInvalidConfig}. Keys that are
// absent keep their defaults.
TrainConfig ParseTrainConfig(std::string_view text);
TrainConfig LoadTrainConfig(const std::filesystem::path& path);

}  // namespace sgvad::train

#endif  // SGVAD_TRAIN_CONFIG_H_
