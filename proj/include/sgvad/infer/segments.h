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

#ifndef SGVAD_INFER_SEGMENTS_H_
#define SGVAD_INFER_SEGMENTS_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace sgvad::infer {

inline constexpr double kMaxSegmentSeconds = 100.0;

// A labeled time span of an audio file. `label` is the dataset's own label
// string; audio_path is kept exactly as written in the segments file.
struct SegmentRecord {
  std::string audio_path;
  double start_s = 0.0;
  double end_s = 0.0;
  std::string label;

  double duration_s() const { return end_s - start_s; }
};

struct ScoredSegment {
  SegmentRecord segment;
  double score = 0.0;  // open gates per frame, in [0, 32]
};

// Throws Error{kInvalidArgument} unless 0 <= start_s < end_s (both finite).
void ValidateSegment(const SegmentRecord& seg);

// Consecutive pieces of at most max_s seconds covering [start_s, end_s).
std::vector<SegmentRecord> SplitLong(const SegmentRecord& seg,
                                     double max_s = kMaxSegmentSeconds);

enum class Decision { kNonSpeech, kSpeech };
const char* DecisionName(Decision d);

// Speech iff score >= threshold. Throws Error{kInvalidArgument} unless
// threshold is in [0, 32].
Decision Decide(double score, double threshold);

// CSV `audio_path,start_s,end_s,label`, one segment per line. A first line
// starting with "audio_path," is taken as a header. Fields cannot contain
// commas. Throws Error{kCorruptFile} on malformed lines.
std::vector<SegmentRecord> ReadSegments(const std::filesystem::path& path);
void WriteSegments(const std::filesystem::path& path,
                   const std::vector<SegmentRecord>& segments);

// CSV `audio_path,start_s,end_s,label,score` with a header line. When
// `threshold` is set a sixth `decision` column is written; ReadScored
// accepts both forms and ignores the decision column.
std::string FormatScored(const std::vector<ScoredSegment>& scored,
                         std::optional<double> threshold = std::nullopt);
void WriteScored(const std::filesystem::path& path,
                 const std::vector<ScoredSegment>& scored,
                 std::optional<double> threshold = std::nullopt);
std::vector<ScoredSegment> ReadScored(const std::filesystem::path& path);

}  // namespace sgvad::infer

#endif  // SGVAD_INFER_SEGMENTS_H_
