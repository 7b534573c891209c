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
#include <numbers>

#include "oracles.h"
#include "sgvad/common/file_util.h"
#include "sgvad/eval/auc.h"
#include "sgvad/eval/report.h"
#include "sgvad/eval/toy_corpus.h"
#include "sgvad/train/data.h"
#include "test_util.h"

namespace sgvad::eval {
namespace {

using testing::CodeOf;
using testing::TempDir;

std::vector<LabeledScore> Items(const std::vector<double>& scores,
                                const std::vector<bool>& labels) {
  std::vector<LabeledScore> out;
  for (size_t i = 0; i < scores.size(); ++i) out.push_back({scores[i], labels[i], 1.0});
  return out;
}

std::vector<LabeledScore> RandomInstance(Rng& rng) {
  const int n = UniformInt(rng, 2, 200);
  std::vector<LabeledScore> items(n);
  for (auto& it : items) {
    // Coarse scores so ties are common.
    it.score = UniformInt(rng, 0, 1) ? UniformInt(rng, 0, 32) : Uniform(rng, 0, 32);
    it.positive = UniformInt(rng, 0, 1) == 1;
    it.weight = Uniform(rng, 0.1, 5.0);
  }
  items[0].positive = true;
  items[1].positive = false;
  return items;
}

TEST(AucTest, Examples) {
  EXPECT_EQ(AucRoc(Items({3, 4, 1, 0}, {true, true, false, false})), 1.0);
  EXPECT_EQ(AucRoc(Items({2, 2, 2, 2}, {true, false, true, false})), 0.5);
  EXPECT_EQ(AucRoc(Items({0.9, 0.4, 0.35, 0.8}, {true, false, true, false})), 0.5);
}

TEST(AucTest, DegenerateAndInvalidInput) {
  EXPECT_EQ(CodeOf([] { AucRoc(Items({1, 2}, {true, true})); }),
            ErrorCode::kDegenerateLabels);
  EXPECT_EQ(CodeOf([] { AucRoc({}); }), ErrorCode::kDegenerateLabels);
  EXPECT_EQ(CodeOf([] { AucRoc(Items({1, NAN}, {true, false})); }),
            ErrorCode::kInvalidArgument);
  std::vector<LabeledScore> zero = {{1, true, 0.0}, {0, false, 1.0}};
  EXPECT_EQ(CodeOf([&] { AucRoc(zero, true); }), ErrorCode::kInvalidArgument);
}

TEST(AucTest, MatchesBruteForceOracle) {
  Rng rng = MakeRng(1);
  for (int trial = 0; trial < 200; ++trial) {
    auto items = RandomInstance(rng);
    EXPECT_NEAR(AucRoc(items), testing::BruteForceAuc(items), 1e-12);
    EXPECT_NEAR(AucRoc(items, true), testing::BruteForceAuc(items, true), 1e-12);
  }
}

TEST(AucTest, InvariantUnderMonotoneTransform) {
  Rng rng = MakeRng(2);
  for (int trial = 0; trial < 50; ++trial) {
    auto items = RandomInstance(rng);
    auto moved = items;
    for (auto& it : moved) it.score = std::exp(0.3 * it.score) - 7.0;
    EXPECT_NEAR(AucRoc(moved), AucRoc(items), 1e-12);
  }
}

TEST(AucTest, ComplementSymmetry) {
  Rng rng = MakeRng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto items = RandomInstance(rng);
    auto flipped = items;
    for (auto& it : flipped) it.positive = !it.positive;
    EXPECT_NEAR(AucRoc(flipped), 1.0 - AucRoc(items), 1e-12);
    EXPECT_NEAR(AucRoc(flipped, true), 1.0 - AucRoc(items, true), 1e-12);
  }
}

TEST(LabelMapTest, ParsesAndRejects) {
  LabelMap map = ParseLabelMap("# comment\nspeech\tpos\n\nnoise\tneg\nspeech\tpos\n", "t");
  EXPECT_EQ(map.size(), 2u);
  EXPECT_TRUE(map.at("speech"));
  EXPECT_FALSE(map.at("noise"));
  EXPECT_EQ(CodeOf([] { ParseLabelMap("speech\tpos\nspeech\tneg\n", "t"); }),
            ErrorCode::kCorruptFile);
  EXPECT_EQ(CodeOf([] { ParseLabelMap("speech\tmaybe\n", "t"); }),
            ErrorCode::kCorruptFile);
  EXPECT_EQ(CodeOf([] { ParseLabelMap("speech pos\n", "t"); }), ErrorCode::kCorruptFile);
}

std::vector<infer::ScoredSegment> Scored() {
  return {{{"a.wav", 0, 1, "speech"}, 32.0},
          {{"b.wav", 0, 2, "speech"}, 32.0},
          {{"c.wav", 0, 3, "noise"}, 0.0},
          {{"d.wav", 0, 0.5, "music"}, 0.0}};
}

TEST(EvaluateTest, StubScoresGivePerfectAuc) {
  LabelMap map = {{"speech", true}, {"noise", false}, {"music", false}};
  EvalReport r = Evaluate(Scored(), map);
  EXPECT_EQ(r.auc, 1.0);
  EXPECT_EQ(r.weighted_auc, 1.0);
  EXPECT_EQ(r.n_pos, 2u);
  EXPECT_EQ(r.n_neg, 2u);
  EXPECT_EQ(r.pos_s, 3.0);
  EXPECT_EQ(r.neg_s, 3.5);
  ASSERT_EQ(r.classes.size(), 3u);
  EXPECT_EQ(r.classes[2].label, "speech");
  EXPECT_EQ(r.classes[2].histogram[kHistogramBins - 1], 2u);
  const std::string text = FormatReport(r, false);
  EXPECT_EQ(text.rfind("auc_roc 1", 0), 0u);
}

TEST(EvaluateTest, UnmappedAndDegenerate) {
  LabelMap partial = {{"speech", true}, {"noise", false}};
  EXPECT_EQ(CodeOf([&] { Evaluate(Scored(), partial); }), ErrorCode::kUnmappedLabel);
  LabelMap all_pos = {{"speech", true}, {"noise", true}, {"music", true}};
  EXPECT_EQ(CodeOf([&] { Evaluate(Scored(), all_pos); }), ErrorCode::kDegenerateLabels);
}

TEST(EvaluateTest, WeightedAucUsesDurations) {
  // One misordered pair (b vs c) carries weight 2 * 3 of the 17 total.
  std::vector<infer::ScoredSegment> s = {{{"a", 0, 1, "sp"}, 30.0},
                                         {{"b", 0, 2, "sp"}, 5.0},
                                         {{"c", 0, 3, "no"}, 10.0},
                                         {{"d", 0, 0.5, "no"}, 1.0}};
  LabelMap map = {{"sp", true}, {"no", false}};
  EvalReport r = Evaluate(s, map);
  EXPECT_NEAR(r.auc, 0.75, 1e-15);
  const double total = (1 + 2) * (3 + 0.5);
  EXPECT_NEAR(r.weighted_auc, (total - 2 * 3) / total, 1e-15);
}

TEST(ToyCorpusTest, ByteIdenticalForSeed) {
  TempDir a, b, c;
  ToyCorpusConfig cfg;
  cfg.seed = 4;
  cfg.n_per_class = 4;
  cfg.n_speech_classes = 2;
  MakeToyCorpus(cfg, a.path());
  MakeToyCorpus(cfg, b.path());
  cfg.seed = 5;
  MakeToyCorpus(cfg, c.path());
  size_t files = 0;
  bool any_diff = false;
  for (const auto& e : std::filesystem::recursive_directory_iterator(a.path())) {
    if (!e.is_regular_file()) continue;
    const auto rel = std::filesystem::relative(e.path(), a.path());
    EXPECT_EQ(ReadFileBytes(e.path()), ReadFileBytes(b.path() / rel)) << rel;
    if (rel.extension() == ".wav") {
      any_diff |= ReadFileBytes(e.path()) != ReadFileBytes(c.path() / rel);
    }
    ++files;
  }
  EXPECT_EQ(files, 12u + 5u);
  EXPECT_TRUE(any_diff);
}

TEST(ToyCorpusTest, ManifestsAndLabels) {
  TempDir dir;
  ToyCorpusConfig cfg;
  cfg.n_per_class = 20;
  cfg.n_speech_classes = 3;
  ToyCorpus corpus = MakeToyCorpus(cfg, dir.path());
  EXPECT_EQ(corpus.clips.size(), 80u);
  auto train = train::ReadManifest(corpus.train_manifest);
  auto val = train::ReadManifest(corpus.val_manifest);
  auto test = train::ReadManifest(corpus.test_manifest);
  EXPECT_EQ(train.size() + val.size() + test.size(), 80u);
  EXPECT_EQ(test.size(), 4u * 3u);
  for (const auto& clip : corpus.clips) {
    EXPECT_GE(clip.duration_s, 0.5);
    EXPECT_LE(clip.duration_s, 1.0);
    EXPECT_EQ(clip.kind == "harmonic", clip.label > 0);
  }
  LabelMap map = ReadLabelMap(corpus.label_map);
  EXPECT_FALSE(map.at("background"));
  EXPECT_TRUE(map.at("tone1"));
  EXPECT_TRUE(map.at("tone3"));
  EXPECT_EQ(ToyLabelName(0), "background");
  EXPECT_EQ(ToyLabelName(2), "tone2");
  EXPECT_EQ(ClassFundamental(1, 3), 120.0);
  EXPECT_EQ(ClassFundamental(3, 3), 300.0);
}

// Magnitude of the DTFT of `x` at `hz`.
double Dtft(const std::vector<float>& x, double hz) {
  double re = 0.0, im = 0.0;
  const double w = 2.0 * std::numbers::pi * hz / dsp::kSampleRate;
  for (size_t i = 0; i < x.size(); ++i) {
    re += x[i] * std::cos(w * double(i));
    im -= x[i] * std::sin(w * double(i));
  }
  return std::hypot(re, im);
}

TEST(ToyCorpusTest, HarmonicPeaksSitAtMultiplesOfF0) {
  ToyCorpusConfig cfg;
  for (int label = 1; label <= cfg.n_speech_classes; ++label) {
    Rng rng = MakeRng(6, {static_cast<uint64_t>(label)});
    ToyClip info;
    dsp::AudioClip clip = SynthesizeToyClip(label, cfg, rng, &info);
    ASSERT_GE(info.harmonics, 4);
    const double nominal = ClassFundamental(label, cfg.n_speech_classes);
    EXPECT_NEAR(info.f0_hz, nominal, 0.021 * nominal);
    for (int k = 1; k <= 4; ++k) {
      const double target = k * info.f0_hz;
      double best_hz = 0.0, best = -1.0;
      for (double hz = target - 15.0; hz <= target + 15.0; hz += 0.25) {
        const double m = Dtft(clip.samples, hz);
        if (m > best) {
          best = m;
          best_hz = hz;
        }
      }
      EXPECT_NEAR(best_hz, target, 2.0) << "label " << label << " harmonic " << k;
    }
  }
}

TEST(ToyCorpusTest, BackgroundHasNoTonalPeaks) {
  ToyCorpusConfig cfg;
  Rng rng = MakeRng(7);
  ToyClip info;
  dsp::AudioClip clip = SynthesizeToyClip(0, cfg, rng, &info);
  EXPECT_NE(info.kind, "harmonic");
  EXPECT_EQ(info.f0_hz, 0.0);
  EXPECT_FALSE(clip.samples.empty());
}

}  // namespace
}  // namespace sgvad::eval
