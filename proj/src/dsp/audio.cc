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

#include "sgvad/dsp/audio.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "sgvad/common/error.h"

namespace sgvad::dsp {
namespace {

uint16_t ReadU16(const uint8_t* p) { return uint16_t(p[0] | (p[1] << 8)); }

uint32_t ReadU32(const uint8_t* p) {
  return uint32_t(p[0]) | (uint32_t(p[1]) << 8) | (uint32_t(p[2]) << 16) |
         (uint32_t(p[3]) << 24);
}

void PutU16(std::string* out, uint16_t v) {
  out->push_back(char(v & 0xff));
  out->push_back(char(v >> 8));
}

void PutU32(std::string* out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out->push_back(char((v >> (8 * i)) & 0xff));
}

[[noreturn]] void Corrupt(const std::filesystem::path& path,
                          const std::string& what) {
  throw Error(ErrorCode::kCorruptFile, path.string() + ": " + what);
}

[[noreturn]] void Unsupported(const std::filesystem::path& path,
                              const std::string& what) {
  throw Error(ErrorCode::kUnsupportedFormat, path.string() + ": " + what);
}

}  // namespace

AudioClip LoadWav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kMissingAudio, "cannot open " + path.string());
  }
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  if (bytes.size() < 12) Corrupt(path, "truncated RIFF header");
  if (std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    Unsupported(path, "not a RIFF/WAVE file");
  }

  bool have_fmt = false;
  const uint8_t* data = nullptr;
  uint32_t data_size = 0;
  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const uint8_t* chunk = bytes.data() + pos;
    uint32_t size = ReadU32(chunk + 4);
    size_t body = pos + 8;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || body + size > bytes.size()) {
        Corrupt(path, "truncated fmt chunk");
      }
      const uint8_t* f = bytes.data() + body;
      uint16_t format = ReadU16(f);
      uint16_t channels = ReadU16(f + 2);
      uint32_t rate = ReadU32(f + 4);
      uint16_t bits = ReadU16(f + 14);
      if (format != 1) Unsupported(path, "encoding is not integer PCM");
      if (channels != 1) {
        Unsupported(path, std::to_string(channels) + " channels, need mono");
      }
      if (rate != uint32_t(kSampleRate)) {
        Unsupported(path, "sample rate " + std::to_string(rate) +
                              " Hz, need " + std::to_string(kSampleRate));
      }
      if (bits != 16) {
        Unsupported(path, std::to_string(bits) + "-bit samples, need 16");
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (!have_fmt) Corrupt(path, "data chunk before fmt chunk");
      if (body + size > bytes.size()) Corrupt(path, "truncated data chunk");
      if (size % 2 != 0) Corrupt(path, "odd data chunk size");
      data = bytes.data() + body;
      data_size = size;
      break;
    }
    pos = body + size + (size & 1);
  }
  if (!have_fmt) Corrupt(path, "missing fmt chunk");
  if (data == nullptr) Corrupt(path, "missing data chunk");

  AudioClip clip;
  clip.sample_rate = kSampleRate;
  clip.samples.resize(data_size / 2);
  for (size_t i = 0; i < clip.samples.size(); ++i) {
    auto v = static_cast<int16_t>(ReadU16(data + 2 * i));
    clip.samples[i] = static_cast<float>(v) / 32768.0f;
  }
  return clip;
}

void WriteWav(const std::filesystem::path& path, const AudioClip& clip) {
  if (clip.sample_rate != kSampleRate) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "only 16 kHz clips can be written");
  }
  const auto data_bytes = static_cast<uint32_t>(clip.samples.size() * 2);
  std::string out;
  out.reserve(44 + data_bytes);
  out += "RIFF";
  PutU32(&out, 36 + data_bytes);
  out += "WAVEfmt ";
  PutU32(&out, 16);
  PutU16(&out, 1);
  PutU16(&out, 1);
  PutU32(&out, kSampleRate);
  PutU32(&out, kSampleRate * 2);
  PutU16(&out, 2);
  PutU16(&out, 16);
  out += "data";
  PutU32(&out, data_bytes);
  for (float s : clip.samples) {
    float scaled = std::nearbyint(s * 32768.0f);
    auto v = static_cast<int16_t>(std::clamp(scaled, -32768.0f, 32767.0f));
    PutU16(&out, static_cast<uint16_t>(v));
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw Error(ErrorCode::kIo, "short write to " + path.string());
}

AudioClip Slice(const AudioClip& clip, size_t begin, size_t end) {
  end = std::min(end, clip.samples.size());
  begin = std::min(begin, end);
  AudioClip out;
  out.sample_rate = clip.sample_rate;
  out.samples.assign(clip.samples.begin() + static_cast<ptrdiff_t>(begin),
                     clip.samples.begin() + static_cast<ptrdiff_t>(end));
  return out;
}

void ValidateClip(const AudioClip& clip) {
  if (clip.sample_rate != kSampleRate) {
    throw Error(ErrorCode::kInvalidArgument,
                "clip sample rate " + std::to_string(clip.sample_rate));
  }
  if (clip.samples.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty clip");
  }
  for (float s : clip.samples) {
    if (!std::isfinite(s)) {
      throw Error(ErrorCode::kInvalidArgument, "non-finite sample in clip");
    }
  }
}

}  // namespace sgvad::dsp
