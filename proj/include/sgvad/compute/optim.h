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

#ifndef SGVAD_COMPUTE_OPTIM_H_
#define SGVAD_COMPUTE_OPTIM_H_

#include <cstdint>
#include <span>

#include "sgvad/compute/layers.h"

namespace sgvad::compute {

struct SgdConfig {
  double momentum = 0.9;
  double weight_decay = 1e-3;

  // Throws Error{kInvalidConfig}.
  void Validate() const;
};

// Per parameter: g = grad + wd * value (only when p.decay), buf = m * buf + g,
// value -= lr * buf. Gradients are cleared afterwards.
template <typename T>
void SgdStep(std::span<Parameter<T>* const> params, double lr,
             const SgdConfig& cfg) {
  const T m = static_cast<T>(cfg.momentum);
  const T wd = static_cast<T>(cfg.weight_decay);
  const T step = static_cast<T>(lr);
  for (Parameter<T>* p : params) {
    T* value = p->value.data();
    T* grad = p->grad.data();
    T* buf = p->momentum.data();
    const bool decay = p->decay && cfg.weight_decay != 0.0;
    for (size_t i = 0; i < p->value.size(); ++i) {
      T g = grad[i];
      if (decay) g += wd * value[i];
      buf[i] = m * buf[i] + g;
      value[i] -= step * buf[i];
      grad[i] = T(0);
    }
  }
}

// Linear warmup from 0, constant hold, then polynomial decay to min_lr.
struct LrSchedule {
  int64_t total_steps = 1;
  double warmup_ratio = 0.05;
  double hold_ratio = 0.45;
  double max_lr = 1e-2;
  double min_lr = 1e-4;
  double decay_power = 2.0;

  void Validate() const;
};

double LrAt(int64_t step, const LrSchedule& sched);

}  // namespace sgvad::compute

#endif  // SGVAD_COMPUTE_OPTIM_H_
