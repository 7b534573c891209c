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

#include "sgvad/infer/segments.h"

#include <charconv>
#include <cmath>

#include "sgvad/common/error.h"
#include "sgvad/common/file_util.h"

namespace sgvad::infer {
namespace {

double ParseDouble(const std::string& s, const std::string& where) {
  double v = 0.0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::kCorruptFile, where + ": bad number '" + s + "'");
  }
  return v;
}

// Splits a CSV body into rows of `min_fields`..`max_fields` fields, skipping
// blank lines and a leading header that starts with "audio_path,".
std::vector<std::vector<std::string>> ReadRows(const std::filesystem::path& path,
                                               size_t min_fields,
                                               size_t max_fields) {
  const std::string text = ReadFileBytes(path);
  std::vector<std::vector<std::string>> rows;
  int line_no = 0;
  for (const std::string& raw : SplitString(text, '\n')) {
    ++line_no;
    std::string_view line = Trim(raw);
    if (line.empty()) continue;
    if (rows.empty() && line_no == 1 && line.rfind("audio_path,", 0) == 0) continue;
    auto fields = SplitString(line, ',');
    if (fields.size() < min_fields || fields.size() > max_fields) {
      throw Error(ErrorCode::kCorruptFile,
                  path.string() + ":" + std::to_string(line_no) + ": expected " +
                      std::to_string(min_fields) + " comma-separated fields");
    }
    fields.push_back(std::to_string(line_no));
    rows.push_back(std::move(fields));
  }
  return rows;
}

SegmentRecord ParseSegment(const std::vector<std::string>& f,
                           const std::filesystem::path& path) {
  const std::string where = path.string() + ":" + f.back();
  SegmentRecord seg;
  seg.audio_path = f[0];
  seg.start_s = ParseDouble(f[1], where);
  seg.end_s = ParseDouble(f[2], where);
  seg.label = f[3];
  try {
    ValidateSegment(seg);
  } catch (const Error& e) {
    throw Error(ErrorCode::kCorruptFile, where + ": " + e.what());
  }
  return seg;
}

std::string SegmentFields(const SegmentRecord& s) {
  return s.audio_path + "," + FormatDouble(s.start_s) + "," +
         FormatDouble(s.end_s) + "," + s.label;
}

}  // namespace

void ValidateSegment(const SegmentRecord& seg) {
  if (!std::isfinite(seg.start_s) || !std::isfinite(seg.end_s) ||
      seg.start_s < 0.0 || seg.end_s <= seg.start_s) {
    throw Error(ErrorCode::kInvalidArgument,
                "segment needs 0 <= start_s < end_s, got [" +
                    FormatDouble(seg.start_s) + ", " + FormatDouble(seg.end_s) + ")");
  }
}

std::vector<SegmentRecord> SplitLong(const SegmentRecord& seg, double max_s) {
  ValidateSegment(seg);
  if (!(max_s > 0.0)) throw Error(ErrorCode::kInvalidArgument, "max_s must be > 0");
  std::vector<SegmentRecord> out;
  // Piece boundaries are start + k * max_s, so no rounding drift builds up.
  for (int64_t k = 0;; ++k) {
    const double begin = seg.start_s + static_cast<double>(k) * max_s;
    if (begin >= seg.end_s) break;
    SegmentRecord piece = seg;
    piece.start_s = begin;
    piece.end_s = std::min(seg.end_s, begin + max_s);
    out.push_back(std::move(piece));
  }
  return out;
}

const char* DecisionName(Decision d) {
  return d == Decision::kSpeech ? "speech" : "non_speech";
}

Decision Decide(double score, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 32.0)) {
    throw Error(ErrorCode::kInvalidArgument, "threshold must be in [0, 32]");
  }
  return score >= threshold ? Decision::kSpeech : Decision::kNonSpeech;
}

std::vector<SegmentRecord> ReadSegments(const std::filesystem::path& path) {
  std::vector<SegmentRecord> out;
  for (const auto& row : ReadRows(path, 4, 4)) out.push_back(ParseSegment(row, path));
  return out;
}

void WriteSegments(const std::filesystem::path& path,
                   const std::vector<SegmentRecord>& segments) {
  std::string text = "audio_path,start_s,end_s,label\n";
  for (const auto& s : segments) text += SegmentFields(s) + "\n";
  WriteFileBytes(path, text);
}

std::string FormatScored(const std::vector<ScoredSegment>& scored,
                         std::optional<double> threshold) {
  std::string text = "audio_path,start_s,end_s,label,score";
  text += threshold ? ",decision\n" : "\n";
  for (const auto& s : scored) {
    text += SegmentFields(s.segment) + "," + FormatDouble(s.score);
    if (threshold) {
      text += ",";
      text += DecisionName(Decide(s.score, *threshold));
    }
    text += "\n";
  }
  return text;
}

void WriteScored(const std::filesystem::path& path,
                 const std::vector<ScoredSegment>& scored,
                 std::optional<double> threshold) {
  WriteFileBytes(path, FormatScored(scored, threshold));
}

std::vector<ScoredSegment> ReadScored(const std::filesystem::path& path) {
  std::vector<ScoredSegment> out;
  for (const auto& row : ReadRows(path, 5, 6)) {
    ScoredSegment s;
    s.segment = ParseSegment(row, path);
    const std::string where = path.string() + ":" + row.back();
    s.score = ParseDouble(row[4], where);
    if (s.score < 0.0 || s.score > 32.0) {
      throw Error(ErrorCode::kCorruptFile, where + ": score outside [0, 32]");
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace sgvad::infer
