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

#ifndef SGVAD_COMPUTE_LAYERS_H_
#define SGVAD_COMPUTE_LAYERS_H_

#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sgvad/common/rng.h"
#include "sgvad/compute/ops.h"
#include "sgvad/compute/tensor.h"

namespace sgvad::compute {

template <typename T>
struct Parameter {
  Parameter() = default;
  Parameter(std::string n, Shape shape, bool apply_decay)
      : name(std::move(n)),
        value(shape),
        grad(shape),
        momentum(shape),
        decay(apply_decay) {}

  std::string name;
  Tensor<T> value;
  Tensor<T> grad;
  Tensor<T> momentum;
  bool decay = true;  // weight decay applies
};

// Non-trainable state that still belongs in checkpoints (BN running stats).
template <typename T>
struct NamedBuffer {
  std::string name;
  Tensor<T>* tensor;
};

template <typename T>
struct ParamRefs {
  std::vector<Parameter<T>*> params;
  std::vector<NamedBuffer<T>> buffers;
};

template <typename T>
size_t CountParameters(const std::vector<Parameter<T>*>& params) {
  size_t n = 0;
  for (const auto* p : params) n += p->value.size();
  return n;
}

template <typename T>
void ZeroGrads(const std::vector<Parameter<T>*>& params) {
  for (auto* p : params) p->grad.Fill(T(0));
}

namespace internal {
template <typename T>
void UniformInit(Tensor<T>* t, Rng& rng, double bound) {
  std::uniform_real_distribution<double> dist(-bound, bound);
  for (auto& v : t->vec()) v = static_cast<T>(dist(rng));
}
}  // namespace internal

template <typename T>
class DepthwiseConv1dLayer {
 public:
  DepthwiseConv1dLayer(const std::string& name, size_t channels, size_t kernel,
                       int dilation = 1)
      : weight_(name + ".weight", {channels, kernel}, true),
        dilation_(dilation) {}

  void Init(Rng& rng) {
    internal::UniformInit(&weight_.value, rng,
                          1.0 / std::sqrt(double(weight_.value.dim(1))));
  }
  Tensor<T> Forward(const Tensor<T>& x) {
    input_ = x;
    return DepthwiseConv1d(x, weight_.value, dilation_);
  }
  Tensor<T> Infer(const Tensor<T>& x) const {
    return DepthwiseConv1d(x, weight_.value, dilation_);
  }
  Tensor<T> Backward(const Tensor<T>& dy) {
    Tensor<T> dx;
    DepthwiseConv1dBackward(input_, weight_.value, dilation_, dy, &dx,
                            &weight_.grad);
    return dx;
  }
  void Collect(ParamRefs<T>* refs) { refs->params.push_back(&weight_); }
  Parameter<T>& weight() { return weight_; }

 private:
  Parameter<T> weight_;
  int dilation_;
  Tensor<T> input_;
};

template <typename T>
class PointwiseConv1dLayer {
 public:
  PointwiseConv1dLayer(const std::string& name, size_t in_ch, size_t out_ch,
                       bool bias = true)
      : weight_(name + ".weight", {out_ch, in_ch}, true) {
    if (bias) bias_ = Parameter<T>(name + ".bias", {out_ch}, false);
  }

  void Init(Rng& rng) {
    const double bound = 1.0 / std::sqrt(double(weight_.value.dim(1)));
    internal::UniformInit(&weight_.value, rng, bound);
    if (!bias_.value.empty()) internal::UniformInit(&bias_.value, rng, bound);
  }
  Tensor<T> Forward(const Tensor<T>& x) {
    input_ = x;
    return PointwiseConv1d(x, weight_.value, bias_.value);
  }
  Tensor<T> Infer(const Tensor<T>& x) const {
    return PointwiseConv1d(x, weight_.value, bias_.value);
  }
  Tensor<T> Backward(const Tensor<T>& dy) {
    Tensor<T> dx;
    PointwiseConv1dBackward(input_, weight_.value, dy, &dx, &weight_.grad,
                            bias_.value.empty() ? nullptr : &bias_.grad);
    return dx;
  }
  void Collect(ParamRefs<T>* refs) {
    refs->params.push_back(&weight_);
    if (!bias_.value.empty()) refs->params.push_back(&bias_);
  }
  Parameter<T>& weight() { return weight_; }
  Parameter<T>& bias() { return bias_; }

 private:
  Parameter<T> weight_;
  Parameter<T> bias_;
  Tensor<T> input_;
};

template <typename T>
class BatchNormLayer {
 public:
  BatchNormLayer(const std::string& name, size_t channels)
      : gamma_(name + ".gamma", {channels}, false),
        beta_(name + ".beta", {channels}, false),
        running_mean_name_(name + ".running_mean"),
        running_var_name_(name + ".running_var"),
        running_mean_({channels}, T(0)),
        running_var_({channels}, T(1)) {
    gamma_.value.Fill(T(1));
  }

  void Init(Rng&) {
    gamma_.value.Fill(T(1));
    beta_.value.Fill(T(0));
    running_mean_.Fill(T(0));
    running_var_.Fill(T(1));
  }
  Tensor<T> Forward(const Tensor<T>& x, Mode mode) {
    return BatchNorm1d(x, gamma_.value, beta_.value, &running_mean_,
                       &running_var_, mode, &cache_);
  }
  Tensor<T> Infer(const Tensor<T>& x) const {
    return BatchNorm1dInfer(x, gamma_.value, beta_.value, running_mean_,
                            running_var_);
  }
  Tensor<T> Backward(const Tensor<T>& dy) {
    Tensor<T> dx;
    BatchNorm1dBackward(cache_, gamma_.value, dy, &dx, &gamma_.grad,
                        &beta_.grad);
    return dx;
  }
  void Collect(ParamRefs<T>* refs) {
    refs->params.push_back(&gamma_);
    refs->params.push_back(&beta_);
    refs->buffers.push_back({running_mean_name_, &running_mean_});
    refs->buffers.push_back({running_var_name_, &running_var_});
  }
  Tensor<T>& running_mean() { return running_mean_; }
  Tensor<T>& running_var() { return running_var_; }

 private:
  Parameter<T> gamma_;
  Parameter<T> beta_;
  std::string running_mean_name_;
  std::string running_var_name_;
  Tensor<T> running_mean_;
  Tensor<T> running_var_;
  BatchNormCache<T> cache_;
};

template <typename T>
class LinearLayer {
 public:
  LinearLayer(const std::string& name, size_t in, size_t out)
      : weight_(name + ".weight", {out, in}, true),
        bias_(name + ".bias", {out}, false) {}

  void Init(Rng& rng) {
    const double bound = 1.0 / std::sqrt(double(weight_.value.dim(1)));
    internal::UniformInit(&weight_.value, rng, bound);
    internal::UniformInit(&bias_.value, rng, bound);
  }
  Tensor<T> Forward(const Tensor<T>& x) {
    input_ = x;
    return Linear(x, weight_.value, bias_.value);
  }
  Tensor<T> Infer(const Tensor<T>& x) const {
    return Linear(x, weight_.value, bias_.value);
  }
  Tensor<T> Backward(const Tensor<T>& dy) {
    Tensor<T> dx;
    LinearBackward(input_, weight_.value, dy, &dx, &weight_.grad, &bias_.grad);
    return dx;
  }
  void Collect(ParamRefs<T>* refs) {
    refs->params.push_back(&weight_);
    refs->params.push_back(&bias_);
  }

 private:
  Parameter<T> weight_;
  Parameter<T> bias_;
  Tensor<T> input_;
};

}  // namespace sgvad::compute

#endif  // SGVAD_COMPUTE_LAYERS_H_
