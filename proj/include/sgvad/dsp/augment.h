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

#ifndef SGVAD_DSP_AUGMENT_H_
#define SGVAD_DSP_AUGMENT_H_

#include <cstddef>

#include "sgvad/common/rng.h"
#include "sgvad/dsp/audio.h"
#include "sgvad/dsp/features.h"

namespace sgvad::dsp {

struct AugmentConfig {
  double time_shift_ms = 5.0;     // shift drawn from [-ms, +ms]
  double noise_db_min = -90.0;    // added-noise RMS, dBFS
  double noise_db_max = -46.0;
  double noise_prob = 0.8;
  int time_masks = 2;
  int time_mask_width = 25;       // frames, width ~ U{0..max}
  int freq_masks = 2;
  int freq_mask_width = 15;       // channels
  int cutout_rects = 5;
  int cutout_time_width = 25;
  int cutout_freq_width = 15;

  // Throws Error{kInvalidConfig}.
  void Validate() const;
};

// Positive shift delays the signal; vacated samples are zero.
AudioClip TimeShift(const AudioClip& clip, int shift_samples);
AudioClip TimeShift(const AudioClip& clip, Rng& rng, const AugmentConfig& cfg);

// Adds zero-mean Gaussian noise rescaled to an RMS of exactly `level_dbfs`.
AudioClip AddNoiseAtLevel(const AudioClip& clip, Rng& rng, double level_dbfs);
// With probability cfg.noise_prob adds noise at a level drawn uniformly from
// [noise_db_min, noise_db_max]; otherwise returns the input.
AudioClip AddWhiteNoise(const AudioClip& clip, Rng& rng,
                        const AugmentConfig& cfg);

struct MaskRect {
  size_t channel_begin = 0;
  size_t channel_end = 0;
  size_t frame_begin = 0;
  size_t frame_end = 0;
};

// Zeroes the cells of the rectangle (clipped to the matrix).
void ApplyMask(FeatureMatrix* f, const MaskRect& rect);

FeatureMatrix SpecAugment(const FeatureMatrix& f, Rng& rng,
                          const AugmentConfig& cfg);
FeatureMatrix SpecCutout(const FeatureMatrix& f, Rng& rng,
                         const AugmentConfig& cfg);

}  // namespace sgvad::dsp

#endif  // SGVAD_DSP_AUGMENT_H_
