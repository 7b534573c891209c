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

#ifndef SGVAD_DSP_AUDIO_H_
#define SGVAD_DSP_AUDIO_H_

#include <cstddef>
#include <filesystem>
#include <vector>

namespace sgvad::dsp {

inline constexpr int kSampleRate = 16000;

// Mono waveform in [-1, 1].
struct AudioClip {
  std::vector<float> samples;
  int sample_rate = kSampleRate;

  size_t size() const { return samples.size(); }
  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

// Reads a RIFF/WAVE file holding 16 kHz mono PCM16. Samples are divided by
// 32768. Throws Error{kUnsupportedFormat} for any other encoding and
// Error{kCorruptFile} for truncated or malformed files.
AudioClip LoadWav(const std::filesystem::path& path);

// Writes 16 kHz mono PCM16 (round to nearest, saturating).
void WriteWav(const std::filesystem::path& path, const AudioClip& clip);

// Samples [begin, end) of the clip; bounds are clamped to the clip.
AudioClip Slice(const AudioClip& clip, size_t begin, size_t end);

// Throws Error{kInvalidArgument} if the clip is empty, non-finite or not at
// kSampleRate.
void ValidateClip(const AudioClip& clip);

}  // namespace sgvad::dsp

#endif  // SGVAD_DSP_AUDIO_H_
