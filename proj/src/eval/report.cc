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

#include "sgvad/eval/report.h"

#include <algorithm>
#include <cstdio>

#include "sgvad/common/error.h"
#include "sgvad/common/file_util.h"
#include "sgvad/eval/auc.h"

namespace sgvad::eval {
namespace {

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

LabelMap ParseLabelMap(std::string_view text, const std::string& source) {
  LabelMap map;
  int line_no = 0;
  for (const std::string& raw : SplitString(text, '\n')) {
    ++line_no;
    std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::string where = source + ":" + std::to_string(line_no);
    auto fields = SplitString(line, '\t');
    if (fields.size() != 2) {
      throw Error(ErrorCode::kCorruptFile, where + ": expected label<TAB>pos|neg");
    }
    const std::string polarity(Trim(fields[1]));
    if (polarity != "pos" && polarity != "neg") {
      throw Error(ErrorCode::kCorruptFile, where + ": polarity must be pos or neg");
    }
    const bool positive = polarity == "pos";
    auto [it, inserted] = map.emplace(fields[0], positive);
    if (!inserted && it->second != positive) {
      throw Error(ErrorCode::kCorruptFile,
                  where + ": conflicting entry for label '" + fields[0] + "'");
    }
  }
  return map;
}

LabelMap ReadLabelMap(const std::filesystem::path& path) {
  return ParseLabelMap(ReadFileBytes(path), path.string());
}

EvalReport Evaluate(const std::vector<infer::ScoredSegment>& scored,
                    const LabelMap& map) {
  EvalReport report;
  std::map<std::string, ClassSummary> classes;
  std::vector<LabeledScore> items;
  items.reserve(scored.size());
  for (const auto& s : scored) {
    auto it = map.find(s.segment.label);
    if (it == map.end()) {
      throw Error(ErrorCode::kUnmappedLabel,
                  "label '" + s.segment.label + "' is not in the label map");
    }
    const double duration = s.segment.duration_s();
    items.push_back({s.score, it->second, duration});
    (it->second ? report.n_pos : report.n_neg) += 1;
    (it->second ? report.pos_s : report.neg_s) += duration;

    ClassSummary& c = classes[s.segment.label];
    c.label = s.segment.label;
    c.positive = it->second;
    ++c.count;
    c.total_s += duration;
    c.mean_score += s.score;
    const int bin = std::clamp(static_cast<int>(s.score / 4.0), 0, kHistogramBins - 1);
    ++c.histogram[bin];
  }
  report.auc = AucRoc(items, false);
  report.weighted_auc = AucRoc(items, true);
  for (auto& [label, c] : classes) {
    c.mean_score /= static_cast<double>(c.count);
    report.classes.push_back(c);
  }
  return report;
}

std::string FormatReport(const EvalReport& r, bool weighted) {
  std::string out = "auc_roc " + FormatDouble(weighted ? r.weighted_auc : r.auc) +
                    (weighted ? " (duration-weighted)\n" : " (per segment)\n");
  out += "auc_roc_unweighted " + FormatDouble(r.auc) + "\n";
  out += "auc_roc_weighted " + FormatDouble(r.weighted_auc) + "\n";
  out += "positives " + std::to_string(r.n_pos) + " segments " + Fixed(r.pos_s, 3) + " s\n";
  out += "negatives " + std::to_string(r.n_neg) + " segments " + Fixed(r.neg_s, 3) + " s\n";
  out += "\nscore histogram per class (bins of 4 over [0, 32])\n";
  out += "label\tpolarity\tcount\tmean_score";
  for (int b = 0; b < kHistogramBins; ++b) {
    out += "\t" + std::to_string(4 * b) + "-" + std::to_string(4 * b + 4);
  }
  out += "\n";
  for (const auto& c : r.classes) {
    out += c.label + "\t" + (c.positive ? "pos" : "neg") + "\t" +
           std::to_string(c.count) + "\t" + Fixed(c.mean_score, 3);
    for (size_t n : c.histogram) out += "\t" + std::to_string(n);
    out += "\n";
  }
  return out;
}

}  // namespace sgvad::eval
