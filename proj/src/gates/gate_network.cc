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

#include "sgvad/gates/gate_network.h"

#include <string>

#include "sgvad/common/error.h"

namespace sgvad::gates {
namespace {

compute::SeparableBlockSpec BlockSpec(const GateModelConfig& cfg, size_t i) {
  compute::SeparableBlockSpec spec;
  spec.in_channels = cfg.channels;
  spec.out_channels = cfg.channels;
  spec.kernel = cfg.kernel_widths[i];
  spec.residual = i > 0;
  spec.activation = compute::Activation::kTanh;
  return spec;
}

std::string BlockName(size_t i) {
  return std::string(kGatePrefix) + "/block" + std::to_string(i + 1);
}

}  // namespace

void GateModelConfig::Validate() const {
  if (channels == 0) {
    throw Error(ErrorCode::kInvalidConfig, "gate channels must be positive");
  }
  if (kernel_widths.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "gate network needs >= 1 block");
  }
  for (size_t k : kernel_widths) {
    if (k % 2 == 0) {
      throw Error(ErrorCode::kInvalidConfig, "gate kernel widths must be odd");
    }
  }
  if (!(sigma > 0)) {
    throw Error(ErrorCode::kInvalidConfig, "gate sigma must be positive");
  }
}

template <typename T>
GateNetwork<T>::GateNetwork(const GateModelConfig& cfg)
    : cfg_(cfg),
      head_(std::string(kGatePrefix) + "/out", cfg.channels, cfg.channels) {
  cfg_.Validate();
  blocks_.reserve(cfg_.kernel_widths.size());
  for (size_t i = 0; i < cfg_.kernel_widths.size(); ++i) {
    blocks_.emplace_back(BlockName(i), BlockSpec(cfg_, i));
  }
}

template <typename T>
void GateNetwork<T>::Init(Rng& rng) {
  for (auto& block : blocks_) block.Init(rng);
  head_.Init(rng);
}

template <typename T>
Tensor<T> GateNetwork<T>::Forward(const Tensor<T>& x, Mode mode) {
  compute::CheckRank(x, 3, "gate network input");
  if (x.dim(1) != cfg_.channels) {
    throw Error(ErrorCode::kShapeMismatch,
                "gate network expects " + std::to_string(cfg_.channels) +
                    " channels, got " + compute::ShapeString(x.shape()));
  }
  Tensor<T> h = x;
  for (auto& block : blocks_) h = block.Forward(h, mode);
  return head_.Forward(h);
}

template <typename T>
Tensor<T> GateNetwork<T>::Infer(const Tensor<T>& x) const {
  compute::CheckRank(x, 3, "gate network input");
  if (x.dim(1) != cfg_.channels) {
    throw Error(ErrorCode::kShapeMismatch,
                "gate network expects " + std::to_string(cfg_.channels) +
                    " channels, got " + compute::ShapeString(x.shape()));
  }
  Tensor<T> h = x;
  for (const auto& block : blocks_) h = block.Infer(h);
  return head_.Infer(h);
}

template <typename T>
Tensor<T> GateNetwork<T>::Backward(const Tensor<T>& dmu) {
  Tensor<T> d = head_.Backward(dmu);
  for (auto it = blocks_.rbegin(); it != blocks_.rend(); ++it) {
    d = it->Backward(d);
  }
  return d;
}

template <typename T>
ParamRefs<T> GateNetwork<T>::Refs() {
  ParamRefs<T> refs;
  for (auto& block : blocks_) block.Collect(&refs);
  head_.Collect(&refs);
  return refs;
}

template <typename T>
size_t GateNetwork<T>::ParameterCount() {
  return compute::CountParameters(Refs().params);
}

size_t CountGateParameters(const GateModelConfig& cfg) {
  size_t n = 0;
  for (size_t i = 0; i < cfg.kernel_widths.size(); ++i) {
    n += compute::SeparableBlock<float>::CountFor(BlockSpec(cfg, i));
  }
  return n + cfg.channels * cfg.channels + cfg.channels;
}

GateNetwork<float> LoadGateNetwork(const compute::TensorList& tensors,
                                   const GateModelConfig& cfg) {
  GateNetwork<float> net(cfg);
  compute::RestoreState(tensors, compute::StateScope::kValues, net.Refs());
  return net;
}

template class GateNetwork<float>;
template class GateNetwork<double>;

}  // namespace sgvad::gates
