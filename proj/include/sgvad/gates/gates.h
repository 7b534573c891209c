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

#ifndef SGVAD_GATES_GATES_H_
#define SGVAD_GATES_GATES_H_

#include <vector>

#include "sgvad/common/rng.h"
#include "sgvad/compute/tensor.h"

namespace sgvad::gates {

using compute::Tensor;

inline constexpr double kDefaultSigma = 0.5;

// Gaussian perturbation eps ~ N(0, sigma^2), one per element of `shape`.
template <typename T>
Tensor<T> SampleGateNoise(const compute::Shape& shape, Rng& rng, double sigma);

// z = clamp(0.5 + mu + eps, 0, 1).
template <typename T>
Tensor<T> GatesFromNoise(const Tensor<T>& mu, const Tensor<T>& eps);

template <typename T>
Tensor<T> SampleGates(const Tensor<T>& mu, Rng& rng, double sigma);

// dL/dmu = dL/dz where 0 < z < 1, and 0 where the clamp saturates.
template <typename T>
Tensor<T> GatesBackward(const Tensor<T>& z, const Tensor<T>& dz);

// Inference gates (eps = 0): 1 where mu >= 0, else 0. The tie at mu = 0
// (clamp output exactly 0.5) opens the gate.
template <typename T>
Tensor<T> DeterministicGates(const Tensor<T>& mu);

// Expected number of open gates per element, mean over all elements:
// mean(Phi((0.5 + mu) / sigma)).
template <typename T>
T ExpectedL0(const Tensor<T>& mu, double sigma);

// Per-sample version over a B x C x T tensor.
template <typename T>
std::vector<T> ExpectedL0PerSample(const Tensor<T>& mu, double sigma);

// d ExpectedL0PerSample[b] / d mu, each sample scaled by weights[b].
template <typename T>
Tensor<T> ExpectedL0Backward(const Tensor<T>& mu, double sigma,
                             const std::vector<T>& weights);

// x (.) z, and its backward for both factors.
template <typename T>
Tensor<T> GateInput(const Tensor<T>& x, const Tensor<T>& z);
template <typename T>
void GateInputBackward(const Tensor<T>& x, const Tensor<T>& z,
                       const Tensor<T>& dy, Tensor<T>* dx, Tensor<T>* dz);

// Mean over time of the per-frame gate sum, for one C x T sample or for
// each sample of a B x C x T batch.
template <typename T>
double VadScore(const Tensor<T>& z);
template <typename T>
std::vector<T> VadScorePerSample(const Tensor<T>& z);

// Standard normal CDF and density.
double NormalCdf(double x);
double NormalPdf(double x);

}  // namespace sgvad::gates

#endif  // SGVAD_GATES_GATES_H_
