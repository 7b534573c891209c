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

#include "sgvad/dsp/augment.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "sgvad/common/error.h"

namespace sgvad::dsp {
namespace {

// Width ~ U{0..max_width} clipped to extent, start uniform over valid slots.
std::pair<size_t, size_t> DrawSpan(Rng& rng, int max_width, size_t extent) {
  const auto width = std::min<size_t>(
      static_cast<size_t>(UniformInt(rng, 0, max_width)), extent);
  const auto start = static_cast<size_t>(
      UniformInt(rng, 0, static_cast<int>(extent - width)));
  return {start, start + width};
}

}  // namespace

void AugmentConfig::Validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidConfig, "augment config: " + what);
  };
  if (time_shift_ms < 0) fail("time_shift_ms must be >= 0");
  if (noise_db_min > noise_db_max) fail("noise_db range out of order");
  if (noise_prob < 0 || noise_prob > 1) fail("noise_prob outside [0, 1]");
  if (time_masks < 0 || freq_masks < 0 || cutout_rects < 0) {
    fail("mask counts must be >= 0");
  }
  if (time_mask_width < 0 || freq_mask_width < 0 || cutout_time_width < 0 ||
      cutout_freq_width < 0) {
    fail("mask widths must be >= 0");
  }
}

AudioClip TimeShift(const AudioClip& clip, int shift_samples) {
  AudioClip out;
  out.sample_rate = clip.sample_rate;
  const auto n = static_cast<ptrdiff_t>(clip.samples.size());
  out.samples.assign(clip.samples.size(), 0.0f);
  for (ptrdiff_t i = 0; i < n; ++i) {
    ptrdiff_t src = i - shift_samples;
    if (src >= 0 && src < n) out.samples[i] = clip.samples[src];
  }
  return out;
}

AudioClip TimeShift(const AudioClip& clip, Rng& rng, const AugmentConfig& cfg) {
  const int max_shift = static_cast<int>(
      std::lround(cfg.time_shift_ms * clip.sample_rate / 1000.0));
  return TimeShift(clip, UniformInt(rng, -max_shift, max_shift));
}

AudioClip AddNoiseAtLevel(const AudioClip& clip, Rng& rng, double level_dbfs) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> noise(clip.samples.size());
  double energy = 0.0;
  for (double& v : noise) {
    v = gauss(rng);
    energy += v * v;
  }
  AudioClip out = clip;
  if (noise.empty() || energy <= 0.0) return out;
  const double rms = std::sqrt(energy / static_cast<double>(noise.size()));
  const double gain = std::pow(10.0, level_dbfs / 20.0) / rms;
  for (size_t i = 0; i < noise.size(); ++i) {
    out.samples[i] = static_cast<float>(clip.samples[i] + gain * noise[i]);
  }
  return out;
}

AudioClip AddWhiteNoise(const AudioClip& clip, Rng& rng,
                        const AugmentConfig& cfg) {
  if (Uniform(rng, 0.0, 1.0) >= cfg.noise_prob) return clip;
  const double level = Uniform(rng, cfg.noise_db_min, cfg.noise_db_max);
  return AddNoiseAtLevel(clip, rng, level);
}

void ApplyMask(FeatureMatrix* f, const MaskRect& rect) {
  const size_t c_end = std::min(rect.channel_end, f->channels());
  const size_t t_end = std::min(rect.frame_end, f->frames());
  for (size_t c = rect.channel_begin; c < c_end; ++c) {
    for (size_t t = rect.frame_begin; t < t_end; ++t) f->at(c, t) = 0.0f;
  }
}

FeatureMatrix SpecAugment(const FeatureMatrix& f, Rng& rng,
                          const AugmentConfig& cfg) {
  FeatureMatrix out = f;
  if (f.frames() == 0 || f.channels() == 0) return out;
  for (int i = 0; i < cfg.time_masks; ++i) {
    auto [t0, t1] = DrawSpan(rng, cfg.time_mask_width, f.frames());
    ApplyMask(&out, {0, f.channels(), t0, t1});
  }
  for (int i = 0; i < cfg.freq_masks; ++i) {
    auto [c0, c1] = DrawSpan(rng, cfg.freq_mask_width, f.channels());
    ApplyMask(&out, {c0, c1, 0, f.frames()});
  }
  return out;
}

FeatureMatrix SpecCutout(const FeatureMatrix& f, Rng& rng,
                         const AugmentConfig& cfg) {
  FeatureMatrix out = f;
  if (f.frames() == 0 || f.channels() == 0) return out;
  for (int i = 0; i < cfg.cutout_rects; ++i) {
    auto [t0, t1] = DrawSpan(rng, cfg.cutout_time_width, f.frames());
    auto [c0, c1] = DrawSpan(rng, cfg.cutout_freq_width, f.channels());
    ApplyMask(&out, {c0, c1, t0, t1});
  }
  return out;
}

}  // namespace sgvad::dsp
