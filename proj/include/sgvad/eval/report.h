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

#ifndef SGVAD_EVAL_REPORT_H_
#define SGVAD_EVAL_REPORT_H_

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sgvad/infer/segments.h"

namespace sgvad::eval {

// label string -> true for speech (positive), false for non-speech.
using LabelMap = std::map<std::string, bool>;

// Lines `label<TAB>pos|neg`; blank lines and '#' comments are skipped.
// Throws Error{kCorruptFile} for malformed or conflicting lines.
LabelMap ParseLabelMap(std::string_view text, const std::string& source);
LabelMap ReadLabelMap(const std::filesystem::path& path);

inline constexpr int kHistogramBins = 8;  // width 4 over [0, 32]

struct ClassSummary {
  std::string label;
  bool positive = false;
  size_t count = 0;
  double total_s = 0.0;
  double mean_score = 0.0;
  std::array<size_t, kHistogramBins> histogram{};
};

struct EvalReport {
  double auc = 0.0;           // one sample per segment
  double weighted_auc = 0.0;  // segments weighted by duration
  size_t n_pos = 0;
  size_t n_neg = 0;
  double pos_s = 0.0;
  double neg_s = 0.0;
  std::vector<ClassSummary> classes;  // sorted by label
};

// Throws Error{kUnmappedLabel} for labels missing from `map` and
// Error{kDegenerateLabels} if one side is empty.
EvalReport Evaluate(const std::vector<infer::ScoredSegment>& scored,
                    const LabelMap& map);

// Plain-text report. The first line is `auc_roc <value>`, using the
// duration-weighted value when `weighted` is set.
std::string FormatReport(const EvalReport& report, bool weighted);

}  // namespace sgvad::eval

#endif  // SGVAD_EVAL_REPORT_H_
