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

#ifndef SGVAD_EVAL_TOY_CORPUS_H_
#define SGVAD_EVAL_TOY_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sgvad/common/rng.h"
#include "sgvad/dsp/audio.h"

namespace sgvad::eval {

// A small synthetic corpus for desk-scale runs. Speech-like classes are
// amplitude-modulated harmonic complexes with a class-specific fundamental;
// the background class is white, pink or amplitude-modulated noise.
struct ToyCorpusConfig {
  uint64_t seed = 0;
  int n_per_class = 200;
  int n_speech_classes = 5;
  double val_fraction = 0.15;
  double test_fraction = 0.15;
  double min_duration_s = 0.5;
  double max_duration_s = 1.0;

  // Throws Error{kInvalidConfig}.
  void Validate() const;
};

// Fundamentals are spread evenly over [120, 300] Hz; speech_class is 1-based.
double ClassFundamental(int speech_class, int n_speech_classes);

// "background" for label 0, "tone<k>" for speech class k.
std::string ToyLabelName(int label);

struct ToyClip {
  std::string path;   // relative to the corpus folder
  int label = 0;
  std::string split;  // train, val or test
  std::string kind;   // harmonic, white, pink or am_noise
  double duration_s = 0.0;
  double f0_hz = 0.0;  // harmonic clips only, jitter included
  int harmonics = 0;
  double am_hz = 0.0;
};

struct ToyCorpus {
  std::vector<ToyClip> clips;
  std::filesystem::path train_manifest;
  std::filesystem::path val_manifest;
  std::filesystem::path test_manifest;
  std::filesystem::path test_segments;  // whole test clips as segments
  std::filesystem::path label_map;
};

// Synthesizes one clip. Label 0 gives background noise. Each clip draws
// from its own stream, so the corpus is byte-identical for a given seed.
dsp::AudioClip SynthesizeToyClip(int label, const ToyCorpusConfig& cfg, Rng& rng,
                                 ToyClip* info);

// Writes audio/*.wav, train.tsv, val.tsv, test.tsv, test_segments.csv and
// label_map.tsv under `out_dir`. Paths inside the lists are relative.
ToyCorpus MakeToyCorpus(const ToyCorpusConfig& cfg,
                        const std::filesystem::path& out_dir);

}  // namespace sgvad::eval

#endif  // SGVAD_EVAL_TOY_CORPUS_H_
