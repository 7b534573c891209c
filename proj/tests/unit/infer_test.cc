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

#include <gtest/gtest.h>

#include <cmath>

#include "sgvad/common/file_util.h"
#include "sgvad/compute/checkpoint.h"
#include "sgvad/infer/scorer.h"
#include "sgvad/infer/segments.h"
#include "test_util.h"

namespace sgvad::infer {
namespace {

using testing::CodeOf;
using testing::TempDir;

gates::GateNetwork<float> ConstantNetwork(float mu) {
  gates::GateNetwork<float> net;
  Rng rng = MakeRng(1);
  net.Init(rng);
  net.output_layer().weight().value.Fill(0.0f);
  net.output_layer().bias().value.Fill(mu);
  return net;
}

gates::GateNetwork<float> RandomNetwork(uint64_t seed) {
  gates::GateNetwork<float> net;
  Rng rng = MakeRng(seed);
  net.Init(rng);
  return net;
}

TEST(SplitLongTest, Examples) {
  auto short_seg = SplitLong({"a.wav", 0.0, 30.0, "x"});
  ASSERT_EQ(short_seg.size(), 1u);
  EXPECT_EQ(short_seg[0].end_s, 30.0);

  auto pieces = SplitLong({"a.wav", 10.0, 260.0, "x"});
  ASSERT_EQ(pieces.size(), 3u);
  EXPECT_EQ(pieces[0].start_s, 10.0);
  EXPECT_EQ(pieces[0].end_s, 110.0);
  EXPECT_EQ(pieces[1].end_s, 210.0);
  EXPECT_EQ(pieces[2].end_s, 260.0);
  EXPECT_EQ(pieces[2].duration_s(), 50.0);
  for (const auto& p : pieces) EXPECT_EQ(p.label, "x");

  auto exact = SplitLong({"a.wav", 0.0, 100.0, "x"});
  EXPECT_EQ(exact.size(), 1u);
}

TEST(SplitLongTest, RejectsBadSpans) {
  EXPECT_EQ(CodeOf([] { SplitLong({"a.wav", 5.0, 5.0, "x"}); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { SplitLong({"a.wav", -1.0, 5.0, "x"}); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { SplitLong({"a.wav", 0.0, NAN, "x"}); }),
            ErrorCode::kInvalidArgument);
}

TEST(DecideTest, Examples) {
  EXPECT_EQ(Decide(20.0, 16.0), Decision::kSpeech);
  EXPECT_EQ(Decide(16.0, 16.0), Decision::kSpeech);
  EXPECT_EQ(Decide(15.9, 16.0), Decision::kNonSpeech);
  EXPECT_EQ(Decide(0.0, 0.0), Decision::kSpeech);
  EXPECT_EQ(std::string(DecisionName(Decision::kSpeech)), "speech");
  EXPECT_EQ(std::string(DecisionName(Decision::kNonSpeech)), "non_speech");
  EXPECT_EQ(CodeOf([] { Decide(1.0, 33.0); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { Decide(1.0, -0.5); }), ErrorCode::kInvalidArgument);
}

TEST(ScorerTest, ConstantNetworksGiveExtremeScores) {
  Rng rng = MakeRng(2);
  dsp::AudioClip clip = testing::WhiteNoise(rng, 0.1, 16000);
  EXPECT_EQ(VadScorer(ConstantNetwork(1.0f)).ScoreClip(clip), 32.0);
  EXPECT_EQ(VadScorer(ConstantNetwork(-1.0f)).ScoreClip(clip), 0.0);
  EXPECT_EQ(VadScorer(ConstantNetwork(0.0f)).ScoreClip(clip), 32.0);  // tie opens
}

TEST(ScorerTest, TooShortAndOutOfRange) {
  VadScorer scorer(RandomNetwork(3));
  dsp::AudioClip tiny;
  tiny.samples.assign(300, 0.1f);
  EXPECT_EQ(CodeOf([&] { scorer.ScoreClip(tiny); }), ErrorCode::kTooShort);
  Rng rng = MakeRng(3);
  dsp::AudioClip clip = testing::WhiteNoise(rng, 0.1, 16000);
  EXPECT_EQ(CodeOf([&] { scorer.ScoreSegment({"a", 0.5, 1.5, "x"}, clip); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] { scorer.ScoreSegment({"a", 0.0, 0.01, "x"}, clip); }),
            ErrorCode::kTooShort);
}

TEST(ScorerTest, SegmentScoreIsSliceScore) {
  VadScorer scorer(RandomNetwork(4));
  Rng rng = MakeRng(4);
  dsp::AudioClip clip = testing::WhiteNoise(rng, 0.1, 32000);
  const double whole = scorer.ScoreSegment({"a", 0.25, 1.5, "x"}, clip);
  EXPECT_EQ(whole, scorer.ScoreClip(dsp::Slice(clip, 4000, 24000)));
  EXPECT_GE(whole, 0.0);
  EXPECT_LE(whole, 32.0);
}

TEST(ScorerTest, LongSegmentsCombineByDuration) {
  VadScorer scorer(RandomNetwork(5));
  Rng rng = MakeRng(5);
  // 250 s of noise whose level changes between pieces.
  dsp::AudioClip clip = testing::WhiteNoise(rng, 0.05, 250 * 16000);
  for (size_t i = 100 * 16000; i < clip.size(); ++i) {
    clip.samples[i] *= (i < 200 * 16000) ? 4.0f : 0.25f;
  }
  const double a = scorer.ScoreClip(dsp::Slice(clip, 0, 1600000));
  const double b = scorer.ScoreClip(dsp::Slice(clip, 1600000, 3200000));
  const double c = scorer.ScoreClip(dsp::Slice(clip, 3200000, 4000000));
  const double expect = (100.0 * a + 100.0 * b + 50.0 * c) / 250.0;
  EXPECT_NEAR(scorer.ScoreSegment({"a", 0.0, 250.0, "x"}, clip), expect, 1e-9);
}

TEST(ScorerTest, ScoringLeavesNetworkUntouchedAndIsRepeatable) {
  VadScorer scorer(RandomNetwork(6));
  compute::TensorList before;
  auto& net = const_cast<gates::GateNetwork<float>&>(scorer.network());
  compute::AppendState(net.Refs(), compute::StateScope::kValues, &before);
  Rng rng = MakeRng(6);
  dsp::AudioClip clip = testing::WhiteNoise(rng, 0.1, 12000);
  const double first = scorer.ScoreClip(clip);
  EXPECT_EQ(scorer.ScoreClip(clip), first);
  compute::TensorList after;
  compute::AppendState(net.Refs(), compute::StateScope::kValues, &after);
  EXPECT_EQ(compute::SerializeTensors(before), compute::SerializeTensors(after));
}

class ScoreSegmentsTest : public ::testing::Test {
 protected:
  void SetUp() override {
    Rng rng = MakeRng(7);
    for (int f = 0; f < 4; ++f) {
      const std::string name = "f" + std::to_string(f) + ".wav";
      dsp::WriteWav(dir_ / name, testing::WhiteNoise(rng, 0.02 * (f + 1), 24000));
      for (int k = 0; k < 3; ++k) {
        segments_.push_back({name, 0.2 * k, 0.2 * k + 0.5, k % 2 ? "speech" : "noise"});
      }
    }
  }

  TempDir dir_;
  std::vector<SegmentRecord> segments_;
};

TEST_F(ScoreSegmentsTest, JobsDoNotChangeResults) {
  VadScorer scorer(RandomNetwork(8));
  auto one = ScoreSegments(scorer, segments_, dir_.path(), 1);
  auto four = ScoreSegments(scorer, segments_, dir_.path(), 4);
  ASSERT_EQ(one.size(), segments_.size());
  EXPECT_EQ(FormatScored(one), FormatScored(four));
  for (size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].segment.audio_path, segments_[i].audio_path);
    EXPECT_EQ(one[i].segment.start_s, segments_[i].start_s);
  }
}

TEST_F(ScoreSegmentsTest, FirstFailureInInputOrderWins) {
  VadScorer scorer(RandomNetwork(9));
  auto bad = segments_;
  bad[5].end_s = 10.0;                 // past the end of f1.wav
  bad[9].audio_path = "missing.wav";   // later in input order
  EXPECT_EQ(CodeOf([&] { ScoreSegments(scorer, bad, dir_.path(), 3); }),
            ErrorCode::kInvalidArgument);
  bad[5] = segments_[5];
  EXPECT_EQ(CodeOf([&] { ScoreSegments(scorer, bad, dir_.path(), 3); }),
            ErrorCode::kMissingAudio);
}

TEST(SegmentCsvTest, RoundTrips) {
  TempDir dir;
  std::vector<SegmentRecord> segs = {{"a.wav", 0.0, 1.25, "speech"},
                                     {"sub/b.wav", 3.5, 7.0, "music"}};
  WriteSegments(dir / "s.csv", segs);
  auto back = ReadSegments(dir / "s.csv");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].audio_path, "sub/b.wav");
  EXPECT_EQ(back[1].start_s, 3.5);
  EXPECT_EQ(back[1].label, "music");

  std::vector<ScoredSegment> scored = {{segs[0], 31.5}, {segs[1], 0.1 + 0.2}};
  WriteScored(dir / "o.csv", scored, 16.0);
  const std::string text = ReadFileBytes(dir / "o.csv");
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "audio_path,start_s,end_s,label,score,decision");
  auto read = ReadScored(dir / "o.csv");
  ASSERT_EQ(read.size(), 2u);
  EXPECT_EQ(read[0].score, 31.5);
  EXPECT_EQ(read[1].score, 0.1 + 0.2);
  WriteScored(dir / "p.csv", scored);
  EXPECT_EQ(ReadScored(dir / "p.csv")[1].segment.label, "music");
}

TEST(SegmentCsvTest, RejectsMalformedLines) {
  TempDir dir;
  WriteFileBytes(dir / "a.csv", "a.wav,0,1\n");
  EXPECT_EQ(CodeOf([&] { ReadSegments(dir / "a.csv"); }), ErrorCode::kCorruptFile);
  WriteFileBytes(dir / "b.csv", "a.wav,zero,1,x\n");
  EXPECT_EQ(CodeOf([&] { ReadSegments(dir / "b.csv"); }), ErrorCode::kCorruptFile);
  WriteFileBytes(dir / "c.csv", "audio_path,start_s,end_s,label,score\na.wav,0,1,x,40\n");
  EXPECT_EQ(CodeOf([&] { ReadScored(dir / "c.csv"); }), ErrorCode::kCorruptFile);
}

TEST(ModelFileTest, ExportLoadsIntoScorer) {
  TempDir dir;
  auto net = RandomNetwork(10);
  compute::TensorList list;
  compute::AppendState(net.Refs(), compute::StateScope::kValues, &list);
  compute::SaveTensors(dir / "m.vad", list);
  VadScorer loaded = VadScorer::FromFile(dir / "m.vad");
  VadScorer direct(std::move(net));
  Rng rng = MakeRng(10);
  dsp::AudioClip clip = testing::WhiteNoise(rng, 0.1, 9000);
  EXPECT_EQ(loaded.ScoreClip(clip), direct.ScoreClip(clip));
}

}  // namespace
}  // namespace sgvad::infer
