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

#ifndef SGVAD_TESTS_SUPPORT_TEST_UTIL_H_
#define SGVAD_TESTS_SUPPORT_TEST_UTIL_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sgvad/common/error.h"
#include "sgvad/common/rng.h"
#include "sgvad/dsp/audio.h"

namespace sgvad::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

// RIFF/WAVE bytes with arbitrary header fields, for format-rejection tests.
std::string WavBytes(uint16_t format, uint16_t channels, uint32_t rate,
                     uint16_t bits, const std::string& data);

dsp::AudioClip Sine(double freq_hz, double amplitude, size_t n);
dsp::AudioClip WhiteNoise(Rng& rng, double stddev, size_t n);

double Rms(const std::vector<float>& v);

// Runs `fn` and returns the code of the sgvad::Error it throws. Fails the
// current test if nothing (or something else) is thrown.
template <typename Fn>
ErrorCode CodeOf(Fn&& fn);

}  // namespace sgvad::testing

#include "test_util_inl.h"

#endif  // SGVAD_TESTS_SUPPORT_TEST_UTIL_H_
