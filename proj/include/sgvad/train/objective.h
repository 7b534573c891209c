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

#ifndef SGVAD_TRAIN_OBJECTIVE_H_
#define SGVAD_TRAIN_OBJECTIVE_H_

#include <vector>

#include "sgvad/classifier/classifier.h"
#include "sgvad/gates/gate_network.h"
#include "sgvad/train/config.h"

namespace sgvad::train {

using compute::Tensor;

// Weight of the L_sg term for one sample: 1{label == background} in full
// mode, 1 in unconditional mode, 0 otherwise.
double LsgWeight(TrainMode mode, int label);

// Per-sample objective: ce + LsgWeight * lsg.
template <typename T>
std::vector<T> CombineLosses(const std::vector<T>& ce, const std::vector<T>& lsg,
                             const std::vector<int>& labels, TrainMode mode);

template <typename T>
struct LossResult {
  T total = 0;              // batch mean
  std::vector<T> per_sample;
  std::vector<T> ce;        // empty in regression mode
  std::vector<T> lsg;       // expected-L0 per sample
  Tensor<T> mu;
  Tensor<T> z;
};

// One training forward pass (BN in train mode) with fixed gate noise `eps`,
// followed by the backward pass when `backward` is set. Parameter gradients
// are accumulated into the networks. Regression mode requires
// classifier == nullptr and the other modes require a classifier;
// violations raise Error{kModeMismatch}.
template <typename T>
LossResult<T> ForwardBackward(gates::GateNetwork<T>& gate,
                              classifier::Classifier<T>* classifier,
                              const Tensor<T>& features,
                              const std::vector<int>& labels,
                              const Tensor<T>& eps, TrainMode mode,
                              double sigma, bool backward = true);

}  // namespace sgvad::train

#endif  // SGVAD_TRAIN_OBJECTIVE_H_
