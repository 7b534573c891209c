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

#ifndef SGVAD_DSP_FEATURE_IO_H_
#define SGVAD_DSP_FEATURE_IO_H_

#include <filesystem>
#include <string_view>

#include "sgvad/dsp/features.h"

namespace sgvad::dsp {

// Binary dump: 4-byte magic, u32 channels, u32 frames, then channel-major
// float32, all little-endian.
inline constexpr std::string_view kFeatureMagic = "SGF1";
inline constexpr std::string_view kGateMagic = "SGZ1";

void WriteMatrixDump(const std::filesystem::path& path, std::string_view magic,
                     const FeatureMatrix& m);
FeatureMatrix ReadMatrixDump(const std::filesystem::path& path,
                             std::string_view magic);

}  // namespace sgvad::dsp

#endif  // SGVAD_DSP_FEATURE_IO_H_
