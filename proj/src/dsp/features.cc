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

#include "sgvad/dsp/features.h"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "sgvad/common/error.h"

namespace sgvad::dsp {
namespace {

// FFTW planning is not thread-safe; execution on distinct buffers is.
std::mutex& PlannerMutex() {
  static std::mutex mu;
  return mu;
}

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double MelToHz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

}  // namespace

int MfccConfig::window_samples() const {
  return static_cast<int>(std::lround(window_ms * sample_rate / 1000.0));
}

int MfccConfig::hop_samples() const {
  return static_cast<int>(std::lround(hop_ms * sample_rate / 1000.0));
}

void MfccConfig::Validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidConfig, "mfcc config: " + what);
  };
  if (sample_rate <= 0 || window_ms <= 0 || hop_ms <= 0 || fft_size <= 0 ||
      n_mel <= 0 || n_mfcc <= 0 || log_floor <= 0) {
    fail("all sizes must be positive");
  }
  if (n_mfcc > n_mel) fail("n_mfcc exceeds n_mel");
  if (fft_size < window_samples()) fail("fft_size shorter than window");
  if (!(fmin_hz >= 0 && fmin_hz < fmax_hz && fmax_hz <= sample_rate / 2.0)) {
    fail("need 0 <= fmin < fmax <= nyquist");
  }
}

size_t NumFrames(size_t num_samples, const MfccConfig& cfg) {
  const auto window = static_cast<size_t>(cfg.window_samples());
  const auto hop = static_cast<size_t>(cfg.hop_samples());
  if (num_samples < window) return 0;
  return 1 + (num_samples - window) / hop;
}

std::vector<MelFilter> MelFilterbank(const MfccConfig& cfg) {
  const int num_bins = cfg.fft_size / 2 + 1;
  const double mel_lo = HzToMel(cfg.fmin_hz);
  const double mel_hi = HzToMel(cfg.fmax_hz);
  std::vector<double> edges(cfg.n_mel + 2);
  for (int i = 0; i < cfg.n_mel + 2; ++i) {
    edges[i] = MelToHz(mel_lo + (mel_hi - mel_lo) * i / (cfg.n_mel + 1));
  }
  std::vector<MelFilter> bank(cfg.n_mel);
  for (int m = 0; m < cfg.n_mel; ++m) {
    const double left = edges[m], center = edges[m + 1], right = edges[m + 2];
    MelFilter& filter = bank[m];
    bool started = false;
    for (int k = 0; k < num_bins; ++k) {
      const double hz = static_cast<double>(k) * cfg.sample_rate / cfg.fft_size;
      const double rise = (hz - left) / (center - left);
      const double fall = (right - hz) / (right - center);
      const double w = std::max(0.0, std::min(rise, fall));
      if (w > 0.0) {
        if (!started) {
          filter.first_bin = static_cast<size_t>(k);
          started = true;
        }
        // Fill gaps so weights stay contiguous.
        filter.weights.resize(static_cast<size_t>(k) - filter.first_bin, 0.0);
        filter.weights.push_back(w);
      }
    }
  }
  return bank;
}

struct MfccExtractor::Impl {
  fftw_plan plan = nullptr;
  std::vector<double> window;
  std::vector<MelFilter> filters;
  std::vector<double> dct;  // n_mfcc x n_mel
};

MfccExtractor::MfccExtractor(const MfccConfig& cfg)
    : cfg_(cfg), impl_(std::make_unique<Impl>()) {
  cfg_.Validate();
  const int n = cfg_.window_samples();
  impl_->window.resize(n);
  for (int i = 0; i < n; ++i) {
    impl_->window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / n);
  }
  impl_->filters = MelFilterbank(cfg_);
  impl_->dct.resize(static_cast<size_t>(cfg_.n_mfcc) * cfg_.n_mel);
  for (int k = 0; k < cfg_.n_mfcc; ++k) {
    const double scale = std::sqrt((k == 0 ? 1.0 : 2.0) / cfg_.n_mel);
    for (int m = 0; m < cfg_.n_mel; ++m) {
      impl_->dct[k * cfg_.n_mel + m] =
          scale * std::cos(std::numbers::pi * k * (2 * m + 1) / (2.0 * cfg_.n_mel));
    }
  }
  std::lock_guard lock(PlannerMutex());
  double* in = fftw_alloc_real(cfg_.fft_size);
  fftw_complex* out = fftw_alloc_complex(cfg_.fft_size / 2 + 1);
  impl_->plan = fftw_plan_dft_r2c_1d(cfg_.fft_size, in, out, FFTW_ESTIMATE);
  fftw_free(in);
  fftw_free(out);
}

MfccExtractor::~MfccExtractor() {
  if (impl_ && impl_->plan) {
    std::lock_guard lock(PlannerMutex());
    fftw_destroy_plan(impl_->plan);
  }
}

FeatureMatrix MfccExtractor::Compute(const AudioClip& clip) const {
  const size_t frames = NumFrames(clip.samples.size(), cfg_);
  if (frames == 0) {
    throw Error(ErrorCode::kTooShort,
                "clip of " + std::to_string(clip.samples.size()) +
                    " samples is shorter than one analysis window");
  }
  const int window = cfg_.window_samples();
  const int hop = cfg_.hop_samples();
  const int num_bins = cfg_.fft_size / 2 + 1;

  double* in = fftw_alloc_real(cfg_.fft_size);
  fftw_complex* out = fftw_alloc_complex(num_bins);
  std::vector<double> power(num_bins);
  std::vector<double> log_mel(cfg_.n_mel);
  FeatureMatrix features(cfg_.n_mfcc, frames);

  for (size_t t = 0; t < frames; ++t) {
    const float* frame = clip.samples.data() + t * hop;
    for (int i = 0; i < window; ++i) in[i] = frame[i] * impl_->window[i];
    for (int i = window; i < cfg_.fft_size; ++i) in[i] = 0.0;
    fftw_execute_dft_r2c(impl_->plan, in, out);
    for (int k = 0; k < num_bins; ++k) {
      power[k] = out[k][0] * out[k][0] + out[k][1] * out[k][1];
    }
    for (int m = 0; m < cfg_.n_mel; ++m) {
      const MelFilter& filter = impl_->filters[m];
      double energy = 0.0;
      for (size_t j = 0; j < filter.weights.size(); ++j) {
        energy += filter.weights[j] * power[filter.first_bin + j];
      }
      log_mel[m] = std::log(energy + cfg_.log_floor);
    }
    for (int k = 0; k < cfg_.n_mfcc; ++k) {
      const double* row = impl_->dct.data() + k * cfg_.n_mel;
      double acc = 0.0;
      for (int m = 0; m < cfg_.n_mel; ++m) acc += row[m] * log_mel[m];
      features.at(k, t) = static_cast<float>(acc);
    }
  }
  fftw_free(in);
  fftw_free(out);
  return features;
}

FeatureMatrix ComputeMfcc(const AudioClip& clip, const MfccConfig& cfg) {
  return MfccExtractor(cfg).Compute(clip);
}

FeatureMatrix NormalizeFeatures(const FeatureMatrix& f) {
  constexpr double kMinStd = 1e-5;
  FeatureMatrix out(f.channels(), f.frames());
  if (f.frames() == 0) return out;
  for (size_t c = 0; c < f.channels(); ++c) {
    auto src = f.channel(c);
    double mean = 0.0;
    for (float v : src) mean += v;
    mean /= static_cast<double>(src.size());
    double var = 0.0;
    for (float v : src) var += (v - mean) * (v - mean);
    var /= static_cast<double>(src.size());
    const double std = std::max(std::sqrt(var), kMinStd);
    auto dst = out.channel(c);
    for (size_t t = 0; t < src.size(); ++t) {
      dst[t] = static_cast<float>((src[t] - mean) / std);
    }
  }
  return out;
}

}  // namespace sgvad::dsp
