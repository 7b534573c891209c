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

#include "sgvad/classifier/classifier.h"
#include "sgvad/compute/ops.h"
#include "sgvad/gates/gate_network.h"
#include "test_util.h"

namespace sgvad::classifier {
namespace {

using compute::Mode;

double MaxAbsDiff(const Tensor<float>& a, const Tensor<float>& b) {
  double worst = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, double(std::abs(a[i] - b[i])));
  }
  return worst;
}

TEST(ClassifierTest, LogitsShapeIndependentOfLength) {
  Classifier<float> net;
  Rng rng = MakeRng(1);
  net.Init(rng);
  for (size_t t : {1u, 2u, 61u, 150u}) {
    Tensor<float> x({2, 32, t}, 0.1f);
    EXPECT_EQ(net.Infer(x).shape(), (compute::Shape{2, 36}));
    EXPECT_EQ(net.Forward(x, Mode::kTrain).shape(), (compute::Shape{2, 36}));
  }
}

TEST(ClassifierTest, RejectsWrongChannelCount) {
  Classifier<float> net;
  EXPECT_EQ(testing::CodeOf([&] { net.Infer(Tensor<float>({1, 16, 10})); }),
            ErrorCode::kShapeMismatch);
}

TEST(ClassifierTest, ZeroInputGivesFixedFiniteLogits) {
  Classifier<float> net;
  Rng rng = MakeRng(2);
  net.Init(rng);
  const Tensor<float> a = net.Infer(Tensor<float>({1, 32, 40}));
  const Tensor<float> b = net.Infer(Tensor<float>({1, 32, 40}));
  EXPECT_EQ(a, b);
  for (float v : a.vec()) EXPECT_TRUE(std::isfinite(v));
}

TEST(ClassifierTest, LongerConstantInputsConvergeInLength) {
  // Edge frames see zero padding, so T and 2T agree only up to an edge
  // effect that fades as T grows.
  Classifier<float> net;
  Rng rng = MakeRng(3);
  net.Init(rng);
  Tensor<float> col({1, 32, 1});
  for (auto& v : col.vec()) v = static_cast<float>(Uniform(rng, -1, 1));
  auto constant = [&](size_t t) {
    Tensor<float> x({1, 32, t});
    for (size_t c = 0; c < 32; ++c) {
      for (size_t k = 0; k < t; ++k) x.at(0, c, k) = col[c];
    }
    return net.Infer(x);
  };
  const double short_gap = MaxAbsDiff(constant(100), constant(200));
  const double long_gap = MaxAbsDiff(constant(1000), constant(2000));
  EXPECT_LT(long_gap, short_gap);
  EXPECT_LT(long_gap, 0.1 * short_gap + 1e-6);
}

TEST(ClassifierTest, SoftmaxOfLogitsSumsToOne) {
  Classifier<float> net;
  Rng rng = MakeRng(4);
  net.Init(rng);
  Tensor<float> x({1, 32, 30});
  for (auto& v : x.vec()) v = static_cast<float>(Uniform(rng, -2, 2));
  const Tensor<float> logits = net.Infer(x);
  auto p = compute::Softmax<float>(logits.span());
  double s = 0.0;
  for (float v : p) s += v;
  EXPECT_NEAR(s, 1.0, 1e-6);
}

TEST(ParameterCountTest, MatchesBudget) {
  const auto report = CountParams(gates::GateModelConfig{}, ClassifierConfig{});
  EXPECT_EQ(report.gate, 7968u);
  EXPECT_GE(report.total(), 56000u);
  EXPECT_LE(report.total(), 105000u);
  Classifier<float> net;
  EXPECT_EQ(net.ParameterCount(), report.classifier);
  EXPECT_EQ(CountClassifierParameters(ClassifierConfig{}), report.classifier);
}

TEST(ParameterCountTest, TwoClassConfigIsSmallerAndStable) {
  ClassifierConfig two;
  two.n_classes = 2;
  const size_t full = CountClassifierParameters(ClassifierConfig{});
  const size_t small = CountClassifierParameters(two);
  EXPECT_EQ(full - small, 34u * (128u + 1u));
  EXPECT_EQ(small, CountClassifierParameters(two));
  ClassifierConfig one;
  one.n_classes = 1;
  EXPECT_EQ(testing::CodeOf([&] { one.Validate(); }), ErrorCode::kInvalidConfig);
}

}  // namespace
}  // namespace sgvad::classifier
