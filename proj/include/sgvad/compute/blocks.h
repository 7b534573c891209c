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

#ifndef SGVAD_COMPUTE_BLOCKS_H_
#define SGVAD_COMPUTE_BLOCKS_H_

#include <optional>
#include <string>

#include "sgvad/compute/layers.h"

namespace sgvad::compute {

enum class Activation { kTanh, kRelu };

struct SeparableBlockSpec {
  size_t in_channels = 0;
  size_t out_channels = 0;
  size_t kernel = 1;
  int dilation = 1;
  bool residual = false;  // 1x1-projected skip added before the activation
  Activation activation = Activation::kTanh;
};

// Time-channel separable convolution block:
//   act(BN(pointwise(depthwise(x))) [+ skip(x)])
template <typename T>
class SeparableBlock {
 public:
  SeparableBlock(const std::string& name, const SeparableBlockSpec& spec)
      : spec_(spec),
        depthwise_(name + "/dw", spec.in_channels, spec.kernel, spec.dilation),
        pointwise_(name + "/pw", spec.in_channels, spec.out_channels),
        norm_(name + "/bn", spec.out_channels) {
    if (spec.residual) {
      skip_.emplace(name + "/skip", spec.in_channels, spec.out_channels);
    }
  }

  void Init(Rng& rng) {
    depthwise_.Init(rng);
    pointwise_.Init(rng);
    norm_.Init(rng);
    if (skip_) skip_->Init(rng);
  }

  Tensor<T> Forward(const Tensor<T>& x, Mode mode) {
    Tensor<T> h = norm_.Forward(pointwise_.Forward(depthwise_.Forward(x)), mode);
    if (skip_) AddInPlace(&h, skip_->Forward(x));
    output_ = Activate(h);
    return output_;
  }

  Tensor<T> Infer(const Tensor<T>& x) const {
    Tensor<T> h = norm_.Infer(pointwise_.Infer(depthwise_.Infer(x)));
    if (skip_) AddInPlace(&h, skip_->Infer(x));
    return Activate(h);
  }

  Tensor<T> Backward(const Tensor<T>& dy) {
    Tensor<T> dh = spec_.activation == Activation::kTanh
                       ? TanhBackward(output_, dy)
                       : ReluBackward(output_, dy);
    Tensor<T> dx = depthwise_.Backward(pointwise_.Backward(norm_.Backward(dh)));
    if (skip_) AddInPlace(&dx, skip_->Backward(dh));
    return dx;
  }

  void Collect(ParamRefs<T>* refs) {
    depthwise_.Collect(refs);
    pointwise_.Collect(refs);
    norm_.Collect(refs);
    if (skip_) skip_->Collect(refs);
  }

  const SeparableBlockSpec& spec() const { return spec_; }

  // Inference-time parameter count implied by a spec (no running stats).
  static size_t CountFor(const SeparableBlockSpec& s) {
    size_t n = s.in_channels * s.kernel;                // depthwise
    n += s.out_channels * s.in_channels + s.out_channels;  // pointwise + bias
    n += 2 * s.out_channels;                            // BN gamma, beta
    if (s.residual) n += s.out_channels * s.in_channels + s.out_channels;
    return n;
  }

 private:
  Tensor<T> Activate(const Tensor<T>& h) const {
    return spec_.activation == Activation::kTanh ? Tanh(h) : Relu(h);
  }

  SeparableBlockSpec spec_;
  DepthwiseConv1dLayer<T> depthwise_;
  PointwiseConv1dLayer<T> pointwise_;
  BatchNormLayer<T> norm_;
  std::optional<PointwiseConv1dLayer<T>> skip_;
  Tensor<T> output_;
};

}  // namespace sgvad::compute

#endif  // SGVAD_COMPUTE_BLOCKS_H_
