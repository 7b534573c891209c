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

#ifndef SGVAD_INFER_SCORER_H_
#define SGVAD_INFER_SCORER_H_

#include <filesystem>
#include <vector>

#include "sgvad/dsp/audio.h"
#include "sgvad/dsp/features.h"
#include "sgvad/gates/gate_network.h"
#include "sgvad/infer/segments.h"

namespace sgvad::infer {

// Segment scoring with a frozen gate network. All methods are const and the
// scorer may be shared between threads.
class VadScorer {
 public:
  explicit VadScorer(gates::GateNetwork<float> network,
                     const dsp::MfccConfig& mfcc = {});

  // Loads the gate tensors of a training checkpoint or inference export.
  static VadScorer FromFile(const std::filesystem::path& model);

  // MFCC -> normalize -> gate network (eval) -> binary gates -> mean open
  // gates per frame. Throws Error{kTooShort} below one analysis window.
  double ScoreClip(const dsp::AudioClip& clip) const;

  // Scores `seg` against the already loaded `audio`. Pieces from SplitLong
  // are normalized and scored independently and combined as a
  // duration-weighted mean. A trailing piece shorter than one analysis
  // window is left out when other pieces exist. Throws
  // Error{kInvalidArgument} if the segment runs past the end of the audio.
  double ScoreSegment(const SegmentRecord& seg, const dsp::AudioClip& audio) const;

  const gates::GateNetwork<float>& network() const { return network_; }

 private:
  gates::GateNetwork<float> network_;
  dsp::MfccExtractor extractor_;
};

// Scores every segment, loading each audio file once. Relative audio paths
// resolve against `base_dir`. Up to `jobs` files are processed at once;
// output order and values do not depend on `jobs`. The first failing
// segment in input order determines the error thrown.
std::vector<ScoredSegment> ScoreSegments(const VadScorer& scorer,
                                         const std::vector<SegmentRecord>& segments,
                                         const std::filesystem::path& base_dir,
                                         int jobs = 1);

}  // namespace sgvad::infer

#endif  // SGVAD_INFER_SCORER_H_
