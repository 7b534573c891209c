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

#include "sgvad/train/data.h"

#include <charconv>
#include <cmath>
#include <sstream>

#include "sgvad/common/error.h"
#include "sgvad/common/file_util.h"
#include "sgvad/dsp/augment.h"
#include "sgvad/classifier/classifier.h"

namespace sgvad::train {

std::vector<ManifestEntry> ReadManifest(const std::filesystem::path& path) {
  const std::string text = ReadFileBytes(path);
  std::vector<ManifestEntry> entries;
  int line_no = 0;
  for (const std::string& raw : SplitString(text, '\n')) {
    ++line_no;
    std::string_view line = Trim(raw);
    if (line.empty()) continue;
    auto fields = SplitString(line, '\t');
    if (fields.size() != 3) {
      throw Error(ErrorCode::kCorruptFile,
                  path.string() + ":" + std::to_string(line_no) +
                      ": expected audio_path<TAB>label<TAB>duration_s");
    }
    ManifestEntry e;
    e.audio_path = ResolveRelative(path, fields[0]).string();
    auto bad = [&](const char* what) {
      return Error(ErrorCode::kCorruptFile, path.string() + ":" +
                                                std::to_string(line_no) +
                                                ": bad " + what);
    };
    {
      const std::string& s = fields[1];
      auto r = std::from_chars(s.data(), s.data() + s.size(), e.label);
      if (r.ec != std::errc() || r.ptr != s.data() + s.size() || e.label < 0) {
        throw bad("label");
      }
    }
    {
      const std::string& s = fields[2];
      auto r = std::from_chars(s.data(), s.data() + s.size(), e.duration_s);
      if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
        throw bad("duration");
      }
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

void WriteManifest(const std::filesystem::path& path,
                   const std::vector<ManifestEntry>& entries) {
  std::string out;
  for (const auto& e : entries) {
    out += e.audio_path + "\t" + std::to_string(e.label) + "\t" +
           FormatDouble(e.duration_s) + "\n";
  }
  WriteFileBytes(path, out);
}

std::vector<dsp::AudioClip> SplitBackground(const dsp::AudioClip& clip,
                                            double max_s, size_t min_samples) {
  const auto chunk = static_cast<size_t>(std::llround(max_s * clip.sample_rate));
  std::vector<dsp::AudioClip> out;
  if (chunk == 0) return out;
  for (size_t begin = 0; begin < clip.size(); begin += chunk) {
    const size_t end = std::min(clip.size(), begin + chunk);
    if (end - begin < min_samples) break;
    out.push_back(dsp::Slice(clip, begin, end));
  }
  return out;
}

std::vector<Example> LoadExamples(const std::vector<ManifestEntry>& entries,
                                  const TrainConfig& cfg) {
  const size_t min_samples =
      static_cast<size_t>(dsp::MfccConfig{}.window_samples());
  std::vector<Example> examples;
  for (const auto& e : entries) {
    if (static_cast<size_t>(e.label) >= cfg.n_classes) {
      throw Error(ErrorCode::kBadTarget,
                  e.audio_path + ": label " + std::to_string(e.label) +
                      " >= n_classes " + std::to_string(cfg.n_classes));
    }
    dsp::AudioClip clip = dsp::LoadWav(e.audio_path);
    if (e.label == classifier::kBackgroundClass) {
      for (auto& chunk : SplitBackground(clip, cfg.max_background_s, min_samples)) {
        examples.push_back({std::move(chunk), e.label});
      }
    } else {
      examples.push_back({std::move(clip), e.label});
    }
  }
  return examples;
}

size_t CropFrames(const TrainConfig& cfg, const dsp::MfccConfig& mfcc) {
  return dsp::NumFrames(
      static_cast<size_t>(std::llround(cfg.crop_s * mfcc.sample_rate)), mfcc);
}

compute::Tensor<float> ClipFeatures(const dsp::AudioClip& clip,
                                    const dsp::MfccExtractor& extractor) {
  dsp::FeatureMatrix f = dsp::NormalizeFeatures(extractor.Compute(clip));
  return compute::Tensor<float>({1, f.channels(), f.frames()},
                                std::move(f.values()));
}

Batch MakeBatch(const std::vector<const Example*>& examples, Rng& rng,
                const TrainConfig& cfg, const dsp::MfccExtractor& extractor,
                bool augment) {
  if (examples.empty()) throw Error(ErrorCode::kEmptyBatch, "empty batch");
  const size_t frames = CropFrames(cfg, extractor.config());
  const size_t channels = static_cast<size_t>(extractor.config().n_mfcc);
  Batch batch;
  batch.features = compute::Tensor<float>({examples.size(), channels, frames});
  batch.labels.reserve(examples.size());

  std::vector<uint64_t> seeds(examples.size());
  for (auto& s : seeds) s = rng();

  for (size_t b = 0; b < examples.size(); ++b) {
    Rng local(seeds[b]);
    const Example& ex = *examples[b];
    dsp::AudioClip clip = ex.clip;
    if (augment) {
      clip = dsp::TimeShift(clip, local, cfg.augment);
      clip = dsp::AddWhiteNoise(clip, local, cfg.augment);
    }
    dsp::FeatureMatrix f = dsp::NormalizeFeatures(extractor.Compute(clip));
    if (augment) {
      f = dsp::SpecAugment(f, local, cfg.augment);
      f = dsp::SpecCutout(f, local, cfg.augment);
    }
    size_t start = 0;
    if (f.frames() > frames && augment) {
      start = static_cast<size_t>(
          UniformInt(local, 0, static_cast<int>(f.frames() - frames)));
    }
    const size_t take = std::min(frames, f.frames() - std::min(start, f.frames()));
    for (size_t c = 0; c < channels; ++c) {
      for (size_t t = 0; t < take; ++t) {
        batch.features.at(b, c, t) = f.at(c, start + t);
      }
    }
    batch.labels.push_back(ex.label);
  }
  return batch;
}

}  // namespace sgvad::train
