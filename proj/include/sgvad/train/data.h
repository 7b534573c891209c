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

#ifndef SGVAD_TRAIN_DATA_H_
#define SGVAD_TRAIN_DATA_H_

#include <filesystem>
#include <string>
#include <vector>

#include "sgvad/common/rng.h"
#include "sgvad/compute/tensor.h"
#include "sgvad/dsp/audio.h"
#include "sgvad/dsp/features.h"
#include "sgvad/train/config.h"

namespace sgvad::train {

// One line per clip: audio_path<TAB>label_index<TAB>duration_s.
struct ManifestEntry {
  std::string audio_path;
  int label = 0;
  double duration_s = 0.0;
};

// Relative audio paths are resolved against the manifest's directory.
std::vector<ManifestEntry> ReadManifest(const std::filesystem::path& path);
void WriteManifest(const std::filesystem::path& path,
                   const std::vector<ManifestEntry>& entries);

// Consecutive chunks of at most max_s seconds. A trailing remainder shorter
// than `min_samples` (one analysis window) is dropped.
std::vector<dsp::AudioClip> SplitBackground(const dsp::AudioClip& clip,
                                            double max_s,
                                            size_t min_samples = 400);

struct Example {
  dsp::AudioClip clip;
  int label = 0;
};

// Loads every clip, checks labels against cfg.n_classes and splits
// background clips (label 0) with SplitBackground.
std::vector<Example> LoadExamples(const std::vector<ManifestEntry>& entries,
                                  const TrainConfig& cfg);

struct Batch {
  compute::Tensor<float> features;  // B x 32 x frames
  std::vector<int> labels;
};

// Training grid length in frames for cfg.crop_s.
size_t CropFrames(const TrainConfig& cfg, const dsp::MfccConfig& mfcc = {});

// Per example: time shift -> white noise -> MFCC -> normalize -> SpecAugment
// -> SpecCutout -> random crop / right zero-pad to CropFrames. Every example
// draws from its own stream seeded from `rng`, so results do not depend on
// how batches are scheduled. With augment == false the waveform and
// spectrogram augmentations are skipped and crops start at frame 0.
// Throws Error{kEmptyBatch}.
Batch MakeBatch(const std::vector<const Example*>& examples, Rng& rng,
                const TrainConfig& cfg, const dsp::MfccExtractor& extractor,
                bool augment = true);

// MFCC -> normalize, as a 1 x 32 x T tensor (inference path).
compute::Tensor<float> ClipFeatures(const dsp::AudioClip& clip,
                                    const dsp::MfccExtractor& extractor);

}  // namespace sgvad::train

#endif  // SGVAD_TRAIN_DATA_H_
