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

#include "sgvad/classifier/classifier.h"

#include <string>

#include "sgvad/common/error.h"

namespace sgvad::classifier {
namespace {

std::vector<compute::SeparableBlockSpec> BlockSpecs(const ClassifierConfig& cfg) {
  std::vector<compute::SeparableBlockSpec> specs;
  size_t in = cfg.in_channels;
  for (size_t k : cfg.block_kernels) {
    specs.push_back({in, cfg.channels, k, 1, true, compute::Activation::kRelu});
    in = cfg.channels;
  }
  specs.push_back({in, cfg.epilogue_channels, cfg.epilogue_kernel,
                   cfg.epilogue_dilation, false, compute::Activation::kRelu});
  return specs;
}

std::string Name(const std::string& leaf) {
  return std::string(kClassifierPrefix) + "/" + leaf;
}

}  // namespace

void ClassifierConfig::Validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidConfig, "classifier config: " + what);
  };
  if (n_classes < 2) fail("n_classes must be >= 2");
  if (in_channels == 0 || channels == 0 || epilogue_channels == 0) {
    fail("channel counts must be positive");
  }
  for (size_t k : block_kernels) {
    if (k % 2 == 0) fail("kernel widths must be odd");
  }
  if (epilogue_kernel % 2 == 0 || epilogue_dilation < 1) {
    fail("epilogue kernel must be odd with dilation >= 1");
  }
}

template <typename T>
Classifier<T>::Classifier(const ClassifierConfig& cfg)
    : cfg_(cfg),
      final_conv_(Name("epilogue2/pw"), cfg.epilogue_channels,
                  cfg.epilogue_channels),
      final_norm_(Name("epilogue2/bn"), cfg.epilogue_channels),
      head_(Name("head"), cfg.epilogue_channels, cfg.n_classes) {
  cfg_.Validate();
  auto specs = BlockSpecs(cfg_);
  blocks_.reserve(specs.size());
  for (size_t i = 0; i < specs.size(); ++i) {
    const bool epilogue = i + 1 == specs.size();
    blocks_.emplace_back(
        Name(epilogue ? "epilogue1" : "block" + std::to_string(i + 1)),
        specs[i]);
  }
}

template <typename T>
void Classifier<T>::Init(Rng& rng) {
  for (auto& b : blocks_) b.Init(rng);
  final_conv_.Init(rng);
  final_norm_.Init(rng);
  head_.Init(rng);
}

template <typename T>
Tensor<T> Classifier<T>::Forward(const Tensor<T>& x, Mode mode) {
  compute::CheckRank(x, 3, "classifier input");
  if (x.dim(1) != cfg_.in_channels) {
    throw Error(ErrorCode::kShapeMismatch,
                "classifier expects " + std::to_string(cfg_.in_channels) +
                    " channels, got " + compute::ShapeString(x.shape()));
  }
  Tensor<T> h = x;
  for (auto& b : blocks_) h = b.Forward(h, mode);
  final_out_ = compute::Relu(final_norm_.Forward(final_conv_.Forward(h), mode));
  frames_ = x.dim(2);
  return head_.Forward(compute::GlobalAvgPool(final_out_));
}

template <typename T>
Tensor<T> Classifier<T>::Infer(const Tensor<T>& x) const {
  compute::CheckRank(x, 3, "classifier input");
  if (x.dim(1) != cfg_.in_channels) {
    throw Error(ErrorCode::kShapeMismatch,
                "classifier expects " + std::to_string(cfg_.in_channels) +
                    " channels, got " + compute::ShapeString(x.shape()));
  }
  Tensor<T> h = x;
  for (const auto& b : blocks_) h = b.Infer(h);
  h = compute::Relu(final_norm_.Infer(final_conv_.Infer(h)));
  return head_.Infer(compute::GlobalAvgPool(h));
}

template <typename T>
Tensor<T> Classifier<T>::Backward(const Tensor<T>& dlogits) {
  Tensor<T> d = compute::GlobalAvgPoolBackward(head_.Backward(dlogits), frames_);
  d = final_conv_.Backward(final_norm_.Backward(compute::ReluBackward(final_out_, d)));
  for (auto it = blocks_.rbegin(); it != blocks_.rend(); ++it) {
    d = it->Backward(d);
  }
  return d;
}

template <typename T>
ParamRefs<T> Classifier<T>::Refs() {
  ParamRefs<T> refs;
  for (auto& b : blocks_) b.Collect(&refs);
  final_conv_.Collect(&refs);
  final_norm_.Collect(&refs);
  head_.Collect(&refs);
  return refs;
}

template <typename T>
size_t Classifier<T>::ParameterCount() {
  return compute::CountParameters(Refs().params);
}

size_t CountClassifierParameters(const ClassifierConfig& cfg) {
  size_t n = 0;
  for (const auto& spec : BlockSpecs(cfg)) {
    n += compute::SeparableBlock<float>::CountFor(spec);
  }
  const size_t e = cfg.epilogue_channels;
  n += e * e + e;                         // 1x1 conv with bias
  n += 2 * e;                             // BN
  n += cfg.n_classes * e + cfg.n_classes; // head
  return n;
}

ParameterReport CountParams(const gates::GateModelConfig& gate_cfg,
                            const ClassifierConfig& classifier_cfg) {
  return {gates::CountGateParameters(gate_cfg),
          CountClassifierParameters(classifier_cfg)};
}

template class Classifier<float>;
template class Classifier<double>;

}  // namespace sgvad::classifier
