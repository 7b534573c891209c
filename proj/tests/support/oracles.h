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

#ifndef SGVAD_TESTS_SUPPORT_ORACLES_H_
#define SGVAD_TESTS_SUPPORT_ORACLES_H_

#include <vector>

#include "sgvad/dsp/audio.h"
#include "sgvad/eval/auc.h"

namespace sgvad::testing {

// Straight transcription of the MFCC recipe in double precision: naive DFT,
// mel triangles from the HTK formula, log, orthonormal DCT-II. Returns
// [coefficient][frame].
std::vector<std::vector<double>> ReferenceMfcc(const dsp::AudioClip& clip);

// All positive/negative pairs, ties count half; pair weight is the product of
// the two weights when `weighted`.
double BruteForceAuc(const std::vector<eval::LabeledScore>& items,
                     bool weighted = false);

}  // namespace sgvad::testing

#endif  // SGVAD_TESTS_SUPPORT_ORACLES_H_
