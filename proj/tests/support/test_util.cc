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

#include "test_util.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>

#include "sgvad/common/binary_io.h"

namespace sgvad::testing {

TempDir::TempDir() {
  std::string tmpl =
      (std::filesystem::temp_directory_path() / "sgvad_test_XXXXXX").string();
  if (!mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
  path_ = tmpl;
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

namespace {

void PutU16(std::string* s, uint16_t v) {
  s->push_back(static_cast<char>(v & 0xff));
  s->push_back(static_cast<char>(v >> 8));
}

}  // namespace

std::string WavBytes(uint16_t format, uint16_t channels, uint32_t rate,
                     uint16_t bits, const std::string& data) {
  std::string out = "RIFF";
  AppendU32(&out, static_cast<uint32_t>(36 + data.size()));
  out += "WAVEfmt ";
  AppendU32(&out, 16);
  PutU16(&out, format);
  PutU16(&out, channels);
  AppendU32(&out, rate);
  AppendU32(&out, rate * channels * bits / 8);
  PutU16(&out, static_cast<uint16_t>(channels * bits / 8));
  PutU16(&out, bits);
  out += "data";
  AppendU32(&out, static_cast<uint32_t>(data.size()));
  out += data;
  return out;
}

dsp::AudioClip Sine(double freq_hz, double amplitude, size_t n) {
  dsp::AudioClip clip;
  clip.samples.resize(n);
  for (size_t i = 0; i < n; ++i) {
    clip.samples[i] = static_cast<float>(
        amplitude * std::sin(2.0 * std::numbers::pi * freq_hz * double(i) /
                             dsp::kSampleRate));
  }
  return clip;
}

dsp::AudioClip WhiteNoise(Rng& rng, double stddev, size_t n) {
  std::normal_distribution<double> dist(0.0, stddev);
  dsp::AudioClip clip;
  clip.samples.resize(n);
  for (auto& s : clip.samples) {
    s = static_cast<float>(std::clamp(dist(rng), -1.0, 1.0));
  }
  return clip;
}

double Rms(const std::vector<float>& v) {
  double acc = 0.0;
  for (float x : v) acc += double(x) * x;
  return v.empty() ? 0.0 : std::sqrt(acc / double(v.size()));
}

}  // namespace sgvad::testing
