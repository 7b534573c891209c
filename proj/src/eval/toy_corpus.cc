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

#include "sgvad/eval/toy_corpus.h"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "sgvad/common/error.h"
#include "sgvad/common/file_util.h"

namespace sgvad::eval {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMinF0 = 120.0;
constexpr double kMaxF0 = 300.0;

void ScaleToDbfs(std::vector<float>* x, double dbfs) {
  double energy = 0.0;
  for (float v : *x) energy += double(v) * v;
  const double rms = std::sqrt(energy / static_cast<double>(x->size()));
  if (rms <= 0.0) return;
  const double gain = std::pow(10.0, dbfs / 20.0) / rms;
  for (float& v : *x) v = static_cast<float>(v * gain);
}

std::vector<float> WhiteNoise(size_t n, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<float> x(n);
  for (float& v : x) v = static_cast<float>(gauss(rng));
  return x;
}

// Paul Kellet's economy pink filter.
std::vector<float> PinkNoise(size_t n, Rng& rng) {
  std::vector<float> white = WhiteNoise(n, rng);
  double b0 = 0, b1 = 0, b2 = 0;
  for (float& v : white) {
    b0 = 0.99765 * b0 + v * 0.0990460;
    b1 = 0.96300 * b1 + v * 0.2965164;
    b2 = 0.57000 * b2 + v * 1.0526913;
    v = static_cast<float>(b0 + b1 + b2 + v * 0.1848);
  }
  return white;
}

void Modulate(std::vector<float>* x, double rate_hz, double depth, double phase) {
  for (size_t i = 0; i < x->size(); ++i) {
    const double t = static_cast<double>(i) / dsp::kSampleRate;
    (*x)[i] = static_cast<float>((*x)[i] * (1.0 + depth * std::sin(kTwoPi * rate_hz * t + phase)));
  }
}

// 10 ms raised-cosine fade at both ends.
void Fade(std::vector<float>* x) {
  const size_t n = std::min(x->size() / 2, size_t{160});
  for (size_t i = 0; i < n; ++i) {
    const double g = 0.5 - 0.5 * std::cos(std::numbers::pi * static_cast<double>(i) / n);
    (*x)[i] = static_cast<float>((*x)[i] * g);
    (*x)[x->size() - 1 - i] = static_cast<float>((*x)[x->size() - 1 - i] * g);
  }
}

std::string ClipName(int label, int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "_%04d.wav", index);
  return "audio/" + ToyLabelName(label) + buf;
}

}  // namespace

void ToyCorpusConfig::Validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::kInvalidConfig, msg); };
  if (n_speech_classes < 2) fail("toy corpus needs at least 2 speech classes");
  if (n_per_class < 3) fail("toy corpus needs at least 3 clips per class");
  if (!(val_fraction > 0 && test_fraction > 0 && val_fraction + test_fraction < 1)) {
    fail("val and test fractions must be positive and sum below 1");
  }
  if (!(min_duration_s >= 0.05 && max_duration_s >= min_duration_s)) {
    fail("bad toy clip duration range");
  }
}

double ClassFundamental(int speech_class, int n_speech_classes) {
  if (speech_class < 1 || speech_class > n_speech_classes) {
    throw Error(ErrorCode::kInvalidArgument, "speech class out of range");
  }
  if (n_speech_classes == 1) return kMinF0;
  return kMinF0 + (kMaxF0 - kMinF0) * (speech_class - 1) / (n_speech_classes - 1);
}

std::string ToyLabelName(int label) {
  return label == 0 ? "background" : "tone" + std::to_string(label);
}

dsp::AudioClip SynthesizeToyClip(int label, const ToyCorpusConfig& cfg, Rng& rng,
                                 ToyClip* info) {
  ToyClip local;
  ToyClip& meta = info ? *info : local;
  meta.label = label;
  const double duration = Uniform(rng, cfg.min_duration_s, cfg.max_duration_s);
  const auto n = static_cast<size_t>(std::llround(duration * dsp::kSampleRate));
  meta.duration_s = static_cast<double>(n) / dsp::kSampleRate;

  dsp::AudioClip clip;
  if (label > 0) {
    meta.kind = "harmonic";
    meta.f0_hz = ClassFundamental(label, cfg.n_speech_classes) *
                 (1.0 + Uniform(rng, -0.02, 0.02));
    meta.harmonics = UniformInt(rng, 4, 8);
    meta.am_hz = Uniform(rng, 4.0, 8.0);
    // Each harmonic's level drifts slowly so the spectral envelope moves
    // over time; the frequencies themselves stay at k * f0.
    std::vector<double> amp(meta.harmonics), phase(meta.harmonics);
    std::vector<double> drift_hz(meta.harmonics), drift_phase(meta.harmonics);
    for (int k = 0; k < meta.harmonics; ++k) {
      amp[k] = Uniform(rng, 0.6, 1.0) / (k + 1);
      phase[k] = Uniform(rng, 0.0, kTwoPi);
      drift_hz[k] = Uniform(rng, 0.5, 2.0);
      drift_phase[k] = Uniform(rng, 0.0, kTwoPi);
    }
    // Syllable-like envelope: raised cosine at the AM rate, dipping to
    // 1 - depth.
    const double depth = Uniform(rng, 0.85, 1.0);
    const double am_phase = Uniform(rng, 0.0, kTwoPi);
    clip.samples.resize(n);
    for (size_t i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / dsp::kSampleRate;
      double v = 0.0;
      for (int k = 0; k < meta.harmonics; ++k) {
        const double level =
            amp[k] * (1.0 + 0.5 * std::sin(kTwoPi * drift_hz[k] * t + drift_phase[k]));
        v += level * std::sin(kTwoPi * (k + 1) * meta.f0_hz * t + phase[k]);
      }
      const double env =
          1.0 - depth * (0.5 + 0.5 * std::cos(kTwoPi * meta.am_hz * t + am_phase));
      clip.samples[i] = static_cast<float>(v * env);
    }
    Fade(&clip.samples);
    const double level = Uniform(rng, -26.0, -14.0);
    ScaleToDbfs(&clip.samples, level);
    // Recording noise under the tones; it fills the syllable gaps.
    std::vector<float> floor =
        UniformInt(rng, 0, 1) == 0 ? WhiteNoise(n, rng) : PinkNoise(n, rng);
    ScaleToDbfs(&floor, level - Uniform(rng, 15.0, 25.0));
    for (size_t i = 0; i < n; ++i) clip.samples[i] += floor[i];
  } else {
    switch (UniformInt(rng, 0, 2)) {
      case 0:
        meta.kind = "white";
        clip.samples = WhiteNoise(n, rng);
        break;
      case 1:
        meta.kind = "pink";
        clip.samples = PinkNoise(n, rng);
        break;
      default:
        meta.kind = "am_noise";
        meta.am_hz = Uniform(rng, 4.0, 8.0);
        clip.samples = WhiteNoise(n, rng);
        Modulate(&clip.samples, meta.am_hz, Uniform(rng, 0.3, 0.7),
                 Uniform(rng, 0.0, kTwoPi));
        break;
    }
    ScaleToDbfs(&clip.samples, Uniform(rng, -40.0, -20.0));
  }
  return clip;
}

ToyCorpus MakeToyCorpus(const ToyCorpusConfig& cfg,
                        const std::filesystem::path& out_dir) {
  cfg.Validate();
  std::error_code ec;
  std::filesystem::create_directories(out_dir / "audio", ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot create " + (out_dir / "audio").string());
  }
  const int n = cfg.n_per_class;
  const int n_test = std::max(1, static_cast<int>(std::lround(cfg.test_fraction * n)));
  const int n_val = std::max(1, static_cast<int>(std::lround(cfg.val_fraction * n)));
  const int n_train = n - n_val - n_test;

  ToyCorpus corpus;
  std::string train, val, test, segments = "audio_path,start_s,end_s,label\n";
  for (int label = 0; label <= cfg.n_speech_classes; ++label) {
    for (int i = 0; i < n; ++i) {
      Rng rng = MakeRng(cfg.seed, {static_cast<uint64_t>(label), static_cast<uint64_t>(i)});
      ToyClip info;
      dsp::AudioClip clip = SynthesizeToyClip(label, cfg, rng, &info);
      info.path = ClipName(label, i);
      dsp::WriteWav(out_dir / info.path, clip);
      const std::string line = info.path + "\t" + std::to_string(label) + "\t" +
                               FormatDouble(info.duration_s) + "\n";
      if (i < n_train) {
        info.split = "train";
        train += line;
      } else if (i < n_train + n_val) {
        info.split = "val";
        val += line;
      } else {
        info.split = "test";
        test += line;
        segments += info.path + ",0," + FormatDouble(info.duration_s) + "," +
                    ToyLabelName(label) + "\n";
      }
      corpus.clips.push_back(std::move(info));
    }
  }
  std::string map;
  for (int label = 0; label <= cfg.n_speech_classes; ++label) {
    map += ToyLabelName(label) + (label == 0 ? "\tneg\n" : "\tpos\n");
  }
  corpus.train_manifest = out_dir / "train.tsv";
  corpus.val_manifest = out_dir / "val.tsv";
  corpus.test_manifest = out_dir / "test.tsv";
  corpus.test_segments = out_dir / "test_segments.csv";
  corpus.label_map = out_dir / "label_map.tsv";
  WriteFileBytes(corpus.train_manifest, train);
  WriteFileBytes(corpus.val_manifest, val);
  WriteFileBytes(corpus.test_manifest, test);
  WriteFileBytes(corpus.test_segments, segments);
  WriteFileBytes(corpus.label_map, map);
  return corpus;
}

}  // namespace sgvad::eval
