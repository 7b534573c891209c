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

#ifndef SGVAD_DSP_FEATURES_H_
#define SGVAD_DSP_FEATURES_H_

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "sgvad/dsp/audio.h"

namespace sgvad::dsp {

inline constexpr int kFeatureChannels = 32;

struct MfccConfig {
  int sample_rate = kSampleRate;
  double window_ms = 25.0;
  double hop_ms = 10.0;
  int fft_size = 512;
  int n_mel = 64;
  int n_mfcc = kFeatureChannels;
  double fmin_hz = 0.0;
  double fmax_hz = 8000.0;
  double log_floor = 1e-10;

  int window_samples() const;
  int hop_samples() const;
  // Throws Error{kInvalidConfig}.
  void Validate() const;
};

// channels x frames, channel-major.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(size_t channels, size_t frames, float fill = 0.0f)
      : channels_(channels), frames_(frames), values_(channels * frames, fill) {}

  size_t channels() const { return channels_; }
  size_t frames() const { return frames_; }

  float& at(size_t c, size_t t) { return values_[c * frames_ + t]; }
  float at(size_t c, size_t t) const { return values_[c * frames_ + t]; }

  std::span<float> channel(size_t c) {
    return {values_.data() + c * frames_, frames_};
  }
  std::span<const float> channel(size_t c) const {
    return {values_.data() + c * frames_, frames_};
  }

  std::vector<float>& values() { return values_; }
  const std::vector<float>& values() const { return values_; }

  bool operator==(const FeatureMatrix&) const = default;

 private:
  size_t channels_ = 0;
  size_t frames_ = 0;
  std::vector<float> values_;
};

// Number of analysis frames for a clip of `num_samples` (0 if shorter than
// one window).
size_t NumFrames(size_t num_samples, const MfccConfig& cfg);

// Triangular filters on the HTK mel scale, stored sparsely: each filter
// covers bins [first_bin, first_bin + weights.size()).
struct MelFilter {
  size_t first_bin = 0;
  std::vector<double> weights;
};
std::vector<MelFilter> MelFilterbank(const MfccConfig& cfg);

// Periodic Hann window -> |FFT|^2 -> mel filterbank -> log(x + floor) ->
// orthonormal DCT-II, keeping the first n_mfcc coefficients. No
// pre-emphasis and no dither, so the result is a pure function of the input.
// Reuse one extractor per thread; construction builds the FFT plan.
class MfccExtractor {
 public:
  explicit MfccExtractor(const MfccConfig& cfg = {});
  ~MfccExtractor();
  MfccExtractor(const MfccExtractor&) = delete;
  MfccExtractor& operator=(const MfccExtractor&) = delete;

  // Throws Error{kTooShort} if the clip holds less than one window.
  FeatureMatrix Compute(const AudioClip& clip) const;

  const MfccConfig& config() const { return cfg_; }

 private:
  struct Impl;
  MfccConfig cfg_;
  std::unique_ptr<Impl> impl_;
};

FeatureMatrix ComputeMfcc(const AudioClip& clip, const MfccConfig& cfg = {});

// Per-channel standardization across time; std is clamped below at 1e-5.
FeatureMatrix NormalizeFeatures(const FeatureMatrix& f);

}  // namespace sgvad::dsp

#endif  // SGVAD_DSP_FEATURES_H_
