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

#include "sgvad/train/objective.h"

#include "sgvad/common/error.h"
#include "sgvad/compute/ops.h"
#include "sgvad/gates/gates.h"

namespace sgvad::train {

double LsgWeight(TrainMode mode, int label) {
  switch (mode) {
    case TrainMode::kFull:
      return label == classifier::kBackgroundClass ? 1.0 : 0.0;
    case TrainMode::kUnconditionalLsg:
      return 1.0;
    case TrainMode::kNoLsg:
    case TrainMode::kRegression:
      return 0.0;
  }
  return 0.0;
}

template <typename T>
std::vector<T> CombineLosses(const std::vector<T>& ce, const std::vector<T>& lsg,
                             const std::vector<int>& labels, TrainMode mode) {
  if (ce.size() != labels.size() || lsg.size() != labels.size()) {
    throw Error(ErrorCode::kShapeMismatch, "loss terms and labels disagree");
  }
  std::vector<T> out(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) {
    out[i] = ce[i] + static_cast<T>(LsgWeight(mode, labels[i])) * lsg[i];
  }
  return out;
}

template <typename T>
LossResult<T> ForwardBackward(gates::GateNetwork<T>& gate,
                              classifier::Classifier<T>* classifier,
                              const Tensor<T>& features,
                              const std::vector<int>& labels,
                              const Tensor<T>& eps, TrainMode mode,
                              double sigma, bool backward) {
  const bool regression = mode == TrainMode::kRegression;
  if (regression && classifier) {
    throw Error(ErrorCode::kModeMismatch,
                "regression mode trains the gate network alone");
  }
  if (!regression && !classifier) {
    throw Error(ErrorCode::kModeMismatch,
                std::string(TrainModeName(mode)) + " mode needs a classifier");
  }
  compute::CheckRank(features, 3, "training features");
  const size_t batch = features.dim(0);
  if (labels.size() != batch) {
    throw Error(ErrorCode::kShapeMismatch, "label count != batch size");
  }
  const T inv_batch = T(1) / static_cast<T>(batch);

  LossResult<T> res;
  res.mu = gate.Forward(features, compute::Mode::kTrain);
  res.z = gates::GatesFromNoise(res.mu, eps);
  res.lsg = gates::ExpectedL0PerSample(res.mu, sigma);
  res.per_sample.resize(batch);

  if (regression) {
    const T channels = static_cast<T>(features.dim(1));
    const size_t per = features.dim(1) * features.dim(2);
    const T frames = static_cast<T>(features.dim(2));
    std::vector<T> scores = gates::VadScorePerSample(res.z);
    Tensor<T> dz(res.z.shape());
    for (size_t b = 0; b < batch; ++b) {
      const T target = labels[b] != classifier::kBackgroundClass ? T(1) : T(0);
      const T diff = scores[b] / channels - target;
      res.per_sample[b] = diff * diff;
      // d/dz of (sum(z)/(T*C) - y)^2, averaged over the batch.
      const T g = T(2) * diff * inv_batch / (frames * channels);
      for (size_t i = 0; i < per; ++i) dz[b * per + i] = g;
    }
    for (T v : res.per_sample) res.total += v;
    res.total *= inv_batch;
    if (backward) gate.Backward(gates::GatesBackward(res.z, dz));
    return res;
  }

  Tensor<T> gated = gates::GateInput(features, res.z);
  Tensor<T> logits = classifier->Forward(gated, compute::Mode::kTrain);
  auto ce = compute::SoftmaxCrossEntropy(logits, labels);
  res.ce = ce.losses;
  res.per_sample = CombineLosses(res.ce, res.lsg, labels, mode);
  for (T v : res.per_sample) res.total += v;
  res.total *= inv_batch;
  if (!backward) return res;

  Tensor<T> dlogits = std::move(ce.grad);
  for (auto& v : dlogits.vec()) v *= inv_batch;
  Tensor<T> dgated = classifier->Backward(dlogits);
  Tensor<T> dz;
  gates::GateInputBackward<T>(features, res.z, dgated, nullptr, &dz);
  Tensor<T> dmu = gates::GatesBackward(res.z, dz);
  std::vector<T> weights(batch);
  for (size_t b = 0; b < batch; ++b) {
    weights[b] = static_cast<T>(LsgWeight(mode, labels[b])) * inv_batch;
  }
  compute::AddInPlace(&dmu, gates::ExpectedL0Backward(res.mu, sigma, weights));
  gate.Backward(dmu);
  return res;
}

#define SGVAD_INSTANTIATE_OBJECTIVE(T)                                        \
  template std::vector<T> CombineLosses(const std::vector<T>&,                \
                                        const std::vector<T>&,                \
                                        const std::vector<int>&, TrainMode);  \
  template LossResult<T> ForwardBackward(                                     \
      gates::GateNetwork<T>&, classifier::Classifier<T>*, const Tensor<T>&,   \
      const std::vector<int>&, const Tensor<T>&, TrainMode, double, bool);

SGVAD_INSTANTIATE_OBJECTIVE(float)
SGVAD_INSTANTIATE_OBJECTIVE(double)

#undef SGVAD_INSTANTIATE_OBJECTIVE

}  // namespace sgvad::train
