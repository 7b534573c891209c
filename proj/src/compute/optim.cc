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

#include "sgvad/compute/optim.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "sgvad/common/error.h"

namespace sgvad::compute {

void SgdConfig::Validate() const {
  if (!(momentum >= 0.0 && momentum < 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "momentum must be in [0, 1)");
  }
  if (!(weight_decay >= 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "weight_decay must be >= 0");
  }
}

void LrSchedule::Validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidConfig, "lr schedule: " + what);
  };
  if (total_steps < 1) fail("total_steps must be >= 1");
  if (warmup_ratio < 0 || hold_ratio < 0 || warmup_ratio + hold_ratio > 1) {
    fail("need 0 <= warmup_ratio + hold_ratio <= 1");
  }
  if (!(min_lr >= 0 && min_lr <= max_lr)) fail("need 0 <= min_lr <= max_lr");
  if (decay_power <= 0) fail("decay_power must be positive");
}

double LrAt(int64_t step, const LrSchedule& sched) {
  const double total = static_cast<double>(sched.total_steps);
  const double s = static_cast<double>(std::clamp<int64_t>(step, 0, sched.total_steps));
  const double warmup_end = sched.warmup_ratio * total;
  const double hold_end = (sched.warmup_ratio + sched.hold_ratio) * total;
  if (s < warmup_end) return sched.max_lr * s / warmup_end;
  if (s < hold_end) return sched.max_lr;
  const double span = total - hold_end;
  if (span <= 0) return sched.max_lr;
  const double u = (s - hold_end) / span;
  return sched.min_lr +
         (sched.max_lr - sched.min_lr) * std::pow(1.0 - u, sched.decay_power);
}

}  // namespace sgvad::compute
