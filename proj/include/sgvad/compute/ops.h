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

#ifndef SGVAD_COMPUTE_OPS_H_
#define SGVAD_COMPUTE_OPS_H_

#include <vector>

#include "sgvad/compute/tensor.h"

namespace sgvad::compute {

enum class Mode { kTrain, kEval };

// Forward/backward kernels. Activations are B x C x T. Backward functions
// overwrite input gradients and accumulate into parameter gradients.

// out[b,c,t] = sum_k w[c,k] * x_pad[b,c,t + k*dilation], "same" zero
// padding of (K-1)*dilation/2 on each side. K must be odd.
template <typename T>
Tensor<T> DepthwiseConv1d(const Tensor<T>& x, const Tensor<T>& w,
                          int dilation = 1);
template <typename T>
void DepthwiseConv1dBackward(const Tensor<T>& x, const Tensor<T>& w,
                             int dilation, const Tensor<T>& dy, Tensor<T>* dx,
                             Tensor<T>* dw);

// out[b,o,t] = bias[o] + sum_c w[o,c] * x[b,c,t]. An empty bias means none.
template <typename T>
Tensor<T> PointwiseConv1d(const Tensor<T>& x, const Tensor<T>& w,
                          const Tensor<T>& bias);
template <typename T>
void PointwiseConv1dBackward(const Tensor<T>& x, const Tensor<T>& w,
                             const Tensor<T>& dy, Tensor<T>* dx, Tensor<T>* dw,
                             Tensor<T>* dbias);

inline constexpr double kBatchNormEps = 1e-5;
inline constexpr double kBatchNormMomentum = 0.1;

template <typename T>
struct BatchNormCache {
  Mode mode = Mode::kEval;
  Tensor<T> x_hat;
  std::vector<T> inv_std;
};

// Per-channel statistics over (batch, time). In train mode running stats
// are updated with the unbiased batch variance.
template <typename T>
Tensor<T> BatchNorm1d(const Tensor<T>& x, const Tensor<T>& gamma,
                      const Tensor<T>& beta, Tensor<T>* running_mean,
                      Tensor<T>* running_var, Mode mode,
                      BatchNormCache<T>* cache);
// Eval-mode forward that touches no state.
template <typename T>
Tensor<T> BatchNorm1dInfer(const Tensor<T>& x, const Tensor<T>& gamma,
                           const Tensor<T>& beta, const Tensor<T>& running_mean,
                           const Tensor<T>& running_var);
template <typename T>
void BatchNorm1dBackward(const BatchNormCache<T>& cache, const Tensor<T>& gamma,
                         const Tensor<T>& dy, Tensor<T>* dx, Tensor<T>* dgamma,
                         Tensor<T>* dbeta);

template <typename T>
Tensor<T> Tanh(const Tensor<T>& x);
template <typename T>
Tensor<T> TanhBackward(const Tensor<T>& y, const Tensor<T>& dy);

template <typename T>
Tensor<T> Relu(const Tensor<T>& x);
template <typename T>
Tensor<T> ReluBackward(const Tensor<T>& y, const Tensor<T>& dy);

// Throws Error{kShapeMismatch}. The backward of an add is the identity on
// both inputs.
template <typename T>
Tensor<T> Add(const Tensor<T>& a, const Tensor<T>& b);
template <typename T>
void AddInPlace(Tensor<T>* a, const Tensor<T>& b);

// B x C x T -> B x C.
template <typename T>
Tensor<T> GlobalAvgPool(const Tensor<T>& x);
template <typename T>
Tensor<T> GlobalAvgPoolBackward(const Tensor<T>& dy, size_t frames);

// x: B x In, w: Out x In, bias: Out.
template <typename T>
Tensor<T> Linear(const Tensor<T>& x, const Tensor<T>& w, const Tensor<T>& bias);
template <typename T>
void LinearBackward(const Tensor<T>& x, const Tensor<T>& w, const Tensor<T>& dy,
                    Tensor<T>* dx, Tensor<T>* dw, Tensor<T>* dbias);

template <typename T>
struct CrossEntropyResult {
  std::vector<T> losses;  // per row
  Tensor<T> grad;         // d loss_i / d logits_i = softmax - one_hot
};

// logits: B x C. Log-sum-exp uses max subtraction. Throws Error{kBadTarget}.
template <typename T>
CrossEntropyResult<T> SoftmaxCrossEntropy(const Tensor<T>& logits,
                                          const std::vector<int>& targets);

template <typename T>
std::vector<T> Softmax(std::span<const T> logits);

}  // namespace sgvad::compute

#endif  // SGVAD_COMPUTE_OPS_H_
