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

#ifndef SGVAD_CLASSIFIER_CLASSIFIER_H_
#define SGVAD_CLASSIFIER_CLASSIFIER_H_

#include <vector>

#include "sgvad/compute/blocks.h"
#include "sgvad/compute/layers.h"
#include "sgvad/gates/gate_network.h"

namespace sgvad::classifier {

using compute::Mode;
using compute::ParamRefs;
using compute::Tensor;

inline constexpr int kBackgroundClass = 0;
inline constexpr char kClassifierPrefix[] = "classifier";

// MarbleNet-style layout at 3x1x64 scale:
//   3 residual separable blocks (relu) with the given kernel widths,
//   separable conv (epilogue_kernel, dilation) -> epilogue_channels,
//   1x1 conv -> epilogue_channels, global average pool, affine head.
struct ClassifierConfig {
  size_t in_channels = 32;
  size_t channels = 64;
  std::vector<size_t> block_kernels = {13, 15, 17};
  size_t epilogue_kernel = 29;
  int epilogue_dilation = 2;
  size_t epilogue_channels = 128;
  size_t n_classes = 36;  // class 0 is background

  void Validate() const;
};

template <typename T>
class Classifier {
 public:
  explicit Classifier(const ClassifierConfig& cfg = {});

  void Init(Rng& rng);

  // x: B x in_channels x T -> logits B x n_classes.
  Tensor<T> Forward(const Tensor<T>& x, Mode mode);
  Tensor<T> Infer(const Tensor<T>& x) const;
  Tensor<T> Backward(const Tensor<T>& dlogits);

  ParamRefs<T> Refs();
  size_t ParameterCount();
  const ClassifierConfig& config() const { return cfg_; }

 private:
  ClassifierConfig cfg_;
  std::vector<compute::SeparableBlock<T>> blocks_;
  compute::PointwiseConv1dLayer<T> final_conv_;
  compute::BatchNormLayer<T> final_norm_;
  compute::LinearLayer<T> head_;
  Tensor<T> final_out_;
  size_t frames_ = 0;
};

size_t CountClassifierParameters(const ClassifierConfig& cfg);

struct ParameterReport {
  size_t gate = 0;
  size_t classifier = 0;
  size_t total() const { return gate + classifier; }
};

ParameterReport CountParams(const gates::GateModelConfig& gate_cfg,
                            const ClassifierConfig& classifier_cfg);

}  // namespace sgvad::classifier

#endif  // SGVAD_CLASSIFIER_CLASSIFIER_H_
