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

#include "sgvad/infer/scorer.h"

#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <thread>

#include "sgvad/common/error.h"
#include "sgvad/compute/checkpoint.h"
#include "sgvad/gates/gates.h"

namespace sgvad::infer {

VadScorer::VadScorer(gates::GateNetwork<float> network, const dsp::MfccConfig& mfcc)
    : network_(std::move(network)), extractor_(mfcc) {}

VadScorer VadScorer::FromFile(const std::filesystem::path& model) {
  return VadScorer(gates::LoadGateNetwork(compute::LoadTensors(model)));
}

double VadScorer::ScoreClip(const dsp::AudioClip& clip) const {
  dsp::FeatureMatrix f = dsp::NormalizeFeatures(extractor_.Compute(clip));
  compute::Tensor<float> x({1, f.channels(), f.frames()}, std::move(f.values()));
  compute::Tensor<float> z = gates::DeterministicGates(network_.Infer(x));
  const compute::Shape per_clip = {z.dim(1), z.dim(2)};
  return gates::VadScore(compute::Tensor<float>(per_clip, std::move(z.vec())));
}

double VadScorer::ScoreSegment(const SegmentRecord& seg,
                               const dsp::AudioClip& audio) const {
  ValidateSegment(seg);
  const double rate = audio.sample_rate;
  const auto total_end = static_cast<size_t>(std::llround(seg.end_s * rate));
  if (total_end > audio.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                seg.audio_path + ": segment ends at " + std::to_string(seg.end_s) +
                    " s but the audio lasts " + std::to_string(audio.duration_s()) +
                    " s");
  }
  const size_t window = static_cast<size_t>(extractor_.config().window_samples());
  const auto pieces = SplitLong(seg);
  double weighted = 0.0, weight = 0.0;
  for (size_t i = 0; i < pieces.size(); ++i) {
    const auto begin = static_cast<size_t>(std::llround(pieces[i].start_s * rate));
    const auto end = static_cast<size_t>(std::llround(pieces[i].end_s * rate));
    if (end - begin < window && pieces.size() > 1) continue;
    if (end - begin < window) {
      throw Error(ErrorCode::kTooShort,
                  seg.audio_path + ": segment [" + std::to_string(seg.start_s) +
                      ", " + std::to_string(seg.end_s) +
                      ") is shorter than one analysis window");
    }
    const double score = ScoreClip(dsp::Slice(audio, begin, end));
    weighted += pieces[i].duration_s() * score;
    weight += pieces[i].duration_s();
  }
  return weighted / weight;
}

std::vector<ScoredSegment> ScoreSegments(const VadScorer& scorer,
                                         const std::vector<SegmentRecord>& segments,
                                         const std::filesystem::path& base_dir,
                                         int jobs) {
  // Group segment indices by file so each file is read once.
  std::map<std::string, std::vector<size_t>> by_file;
  for (size_t i = 0; i < segments.size(); ++i) {
    by_file[segments[i].audio_path].push_back(i);
  }
  std::vector<const std::pair<const std::string, std::vector<size_t>>*> tasks;
  for (const auto& entry : by_file) tasks.push_back(&entry);

  std::vector<ScoredSegment> out(segments.size());
  std::vector<std::exception_ptr> errors(segments.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t t = next++; t < tasks.size(); t = next++) {
      const auto& [path, indices] = *tasks[t];
      std::filesystem::path resolved(path);
      if (resolved.is_relative()) resolved = base_dir / resolved;
      dsp::AudioClip audio;
      try {
        audio = dsp::LoadWav(resolved);
      } catch (...) {
        for (size_t i : indices) errors[i] = std::current_exception();
        continue;
      }
      for (size_t i : indices) {
        try {
          out[i].segment = segments[i];
          out[i].score = scorer.ScoreSegment(segments[i], audio);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    }
  };

  const size_t n_threads =
      std::max<size_t>(1, std::min<size_t>(static_cast<size_t>(std::max(jobs, 1)),
                                           tasks.size()));
  std::vector<std::thread> threads;
  for (size_t i = 1; i < n_threads; ++i) threads.emplace_back(worker);
  worker();
  for (auto& th : threads) th.join();

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace sgvad::infer
