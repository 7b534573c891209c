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

#include "sgvad/gates/gates.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace sgvad::gates {

double NormalCdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double NormalPdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

template <typename T>
Tensor<T> SampleGateNoise(const compute::Shape& shape, Rng& rng, double sigma) {
  std::normal_distribution<double> gauss(0.0, sigma);
  Tensor<T> eps(shape);
  for (auto& v : eps.vec()) v = static_cast<T>(gauss(rng));
  return eps;
}

template <typename T>
Tensor<T> GatesFromNoise(const Tensor<T>& mu, const Tensor<T>& eps) {
  compute::CheckShape(eps.shape(), mu.shape(), "gate noise");
  Tensor<T> z(mu.shape());
  for (size_t i = 0; i < mu.size(); ++i) {
    z[i] = std::clamp(T(0.5) + mu[i] + eps[i], T(0), T(1));
  }
  return z;
}

template <typename T>
Tensor<T> SampleGates(const Tensor<T>& mu, Rng& rng, double sigma) {
  return GatesFromNoise(mu, SampleGateNoise<T>(mu.shape(), rng, sigma));
}

template <typename T>
Tensor<T> GatesBackward(const Tensor<T>& z, const Tensor<T>& dz) {
  compute::CheckShape(dz.shape(), z.shape(), "gate grad");
  Tensor<T> dmu(z.shape());
  for (size_t i = 0; i < z.size(); ++i) {
    dmu[i] = (z[i] > T(0) && z[i] < T(1)) ? dz[i] : T(0);
  }
  return dmu;
}

template <typename T>
Tensor<T> DeterministicGates(const Tensor<T>& mu) {
  Tensor<T> z(mu.shape());
  for (size_t i = 0; i < mu.size(); ++i) z[i] = mu[i] >= T(0) ? T(1) : T(0);
  return z;
}

template <typename T>
T ExpectedL0(const Tensor<T>& mu, double sigma) {
  if (mu.empty()) return T(0);
  double sum = 0.0;
  for (T m : mu.vec()) sum += NormalCdf((0.5 + double(m)) / sigma);
  return static_cast<T>(sum / static_cast<double>(mu.size()));
}

template <typename T>
std::vector<T> ExpectedL0PerSample(const Tensor<T>& mu, double sigma) {
  compute::CheckRank(mu, 3, "expected L0");
  const size_t batch = mu.dim(0);
  const size_t per = mu.size() / std::max<size_t>(batch, 1);
  std::vector<T> out(batch);
  for (size_t b = 0; b < batch; ++b) {
    double sum = 0.0;
    for (size_t i = 0; i < per; ++i) {
      sum += NormalCdf((0.5 + double(mu[b * per + i])) / sigma);
    }
    out[b] = static_cast<T>(sum / static_cast<double>(per));
  }
  return out;
}

template <typename T>
Tensor<T> ExpectedL0Backward(const Tensor<T>& mu, double sigma,
                             const std::vector<T>& weights) {
  compute::CheckRank(mu, 3, "expected L0 grad");
  const size_t batch = mu.dim(0);
  const size_t per = mu.size() / std::max<size_t>(batch, 1);
  Tensor<T> grad(mu.shape());
  for (size_t b = 0; b < batch; ++b) {
    if (weights[b] == T(0)) continue;
    const double scale = double(weights[b]) / (sigma * static_cast<double>(per));
    for (size_t i = 0; i < per; ++i) {
      const size_t k = b * per + i;
      grad[k] = static_cast<T>(scale * NormalPdf((0.5 + double(mu[k])) / sigma));
    }
  }
  return grad;
}

template <typename T>
Tensor<T> GateInput(const Tensor<T>& x, const Tensor<T>& z) {
  compute::CheckShape(z.shape(), x.shape(), "gate input");
  Tensor<T> out(x.shape());
  for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] * z[i];
  return out;
}

template <typename T>
void GateInputBackward(const Tensor<T>& x, const Tensor<T>& z,
                       const Tensor<T>& dy, Tensor<T>* dx, Tensor<T>* dz) {
  compute::CheckShape(z.shape(), x.shape(), "gate input grad");
  compute::CheckShape(dy.shape(), x.shape(), "gate input grad");
  if (dx) *dx = Tensor<T>(x.shape());
  if (dz) *dz = Tensor<T>(x.shape());
  for (size_t i = 0; i < x.size(); ++i) {
    if (dx) (*dx)[i] = dy[i] * z[i];
    if (dz) (*dz)[i] = dy[i] * x[i];
  }
}

template <typename T>
double VadScore(const Tensor<T>& z) {
  compute::CheckRank(z, 2, "vad score");
  const size_t frames = z.dim(1);
  if (frames == 0) return 0.0;
  double sum = 0.0;
  for (T v : z.vec()) sum += v;
  return sum / static_cast<double>(frames);
}

template <typename T>
std::vector<T> VadScorePerSample(const Tensor<T>& z) {
  compute::CheckRank(z, 3, "vad score");
  const size_t batch = z.dim(0), per = z.dim(1) * z.dim(2);
  std::vector<T> out(batch);
  for (size_t b = 0; b < batch; ++b) {
    double sum = 0.0;
    for (size_t i = 0; i < per; ++i) sum += z[b * per + i];
    out[b] = static_cast<T>(sum / static_cast<double>(z.dim(2)));
  }
  return out;
}

#define SGVAD_INSTANTIATE_GATES(T)                                             \
  template Tensor<T> SampleGateNoise<T>(const compute::Shape&, Rng&, double); \
  template Tensor<T> GatesFromNoise(const Tensor<T>&, const Tensor<T>&);       \
  template Tensor<T> SampleGates(const Tensor<T>&, Rng&, double);              \
  template Tensor<T> GatesBackward(const Tensor<T>&, const Tensor<T>&);        \
  template Tensor<T> DeterministicGates(const Tensor<T>&);                     \
  template T ExpectedL0(const Tensor<T>&, double);                             \
  template std::vector<T> ExpectedL0PerSample(const Tensor<T>&, double);       \
  template Tensor<T> ExpectedL0Backward(const Tensor<T>&, double,              \
                                        const std::vector<T>&);                \
  template Tensor<T> GateInput(const Tensor<T>&, const Tensor<T>&);            \
  template void GateInputBackward(const Tensor<T>&, const Tensor<T>&,          \
                                  const Tensor<T>&, Tensor<T>*, Tensor<T>*);   \
  template double VadScore(const Tensor<T>&);                                  \
  template std::vector<T> VadScorePerSample(const Tensor<T>&);

SGVAD_INSTANTIATE_GATES(float)
SGVAD_INSTANTIATE_GATES(double)

#undef SGVAD_INSTANTIATE_GATES

}  // namespace sgvad::gates
