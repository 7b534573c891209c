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

#ifndef SGVAD_GATES_GATE_NETWORK_H_
#define SGVAD_GATES_GATE_NETWORK_H_

#include <string>
#include <vector>

#include "sgvad/compute/blocks.h"
#include "sgvad/compute/checkpoint.h"
#include "sgvad/compute/layers.h"
#include "sgvad/gates/gates.h"

namespace sgvad::gates {

using compute::Mode;
using compute::ParamRefs;

struct GateModelConfig {
  size_t channels = 32;
  std::vector<size_t> kernel_widths = {13, 15, 17};
  double sigma = kDefaultSigma;

  // Throws Error{kInvalidConfig}.
  void Validate() const;
};

// Prefix of every gate-network tensor name in checkpoints.
inline constexpr char kGatePrefix[] = "gate";

// The gate network maps features (B x C x T) to pre-gate values mu of the
// same shape:
//   [sep-conv k0 -> BN -> tanh]
//   [sep-conv ki -> BN, + 1x1 skip, tanh] for the remaining widths
//   1x1 conv C -> C
template <typename T>
class GateNetwork {
 public:
  explicit GateNetwork(const GateModelConfig& cfg = {});

  void Init(Rng& rng);

  // Caches activations for Backward; in kTrain mode BN uses batch statistics
  // and updates its running stats.
  Tensor<T> Forward(const Tensor<T>& x, Mode mode);
  // Eval-mode forward that leaves the network untouched; safe to call
  // concurrently on a frozen network.
  Tensor<T> Infer(const Tensor<T>& x) const;
  // Accumulates parameter gradients and returns d loss / d x.
  Tensor<T> Backward(const Tensor<T>& dmu);

  ParamRefs<T> Refs();
  size_t ParameterCount();

  compute::PointwiseConv1dLayer<T>& output_layer() { return head_; }
  const GateModelConfig& config() const { return cfg_; }

 private:
  GateModelConfig cfg_;
  std::vector<compute::SeparableBlock<T>> blocks_;
  compute::PointwiseConv1dLayer<T> head_;
};

// Parameter count implied by the configuration (trainable values only).
size_t CountGateParameters(const GateModelConfig& cfg);

// Builds a float network from the "gate/..." tensors of a checkpoint (either
// a training checkpoint or an inference export).
GateNetwork<float> LoadGateNetwork(const compute::TensorList& tensors,
                                   const GateModelConfig& cfg = {});

}  // namespace sgvad::gates

#endif  // SGVAD_GATES_GATE_NETWORK_H_
