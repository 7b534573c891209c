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

#ifndef SGVAD_TRAIN_TRAINER_H_
#define SGVAD_TRAIN_TRAINER_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sgvad/classifier/classifier.h"
#include "sgvad/compute/checkpoint.h"
#include "sgvad/compute/optim.h"
#include "sgvad/dsp/features.h"
#include "sgvad/gates/gate_network.h"
#include "sgvad/train/config.h"
#include "sgvad/train/data.h"

namespace sgvad::train {

struct EpochMetrics {
  int epoch = 0;
  int64_t step = 0;         // global steps completed
  double lr = 0.0;          // rate used by the last step of the epoch
  double train_loss = 0.0;  // mean batch loss over the epoch
  double val_acc = 0.0;
  double bg_gate_rate = 0.0;      // mean open fraction, deterministic gates
  double speech_gate_rate = 0.0;
};

// `epoch,step,lr,train_loss,val_acc,bg_gate_rate,speech_gate_rate`
std::string MetricsHeader();
std::string FormatMetrics(const EpochMetrics& m);

struct ValidationResult {
  double accuracy = 0.0;
  double bg_gate_rate = 0.0;
  double speech_gate_rate = 0.0;
};

// Owns both networks and the optimizer state for one run. Step k uses the
// batch stream (seed, k) and the epoch permutation (seed, epoch), so a run
// restored from a checkpoint continues exactly as an uninterrupted one.
class Trainer {
 public:
  Trainer(const TrainConfig& cfg, std::vector<Example> train_set,
          std::vector<Example> val_set);

  int64_t steps_per_epoch() const { return steps_per_epoch_; }
  int64_t total_steps() const { return sched_.total_steps; }
  int64_t step() const { return step_; }
  const TrainConfig& config() const { return cfg_; }
  // Learning rate the next TrainStep will use.
  double current_lr() const { return compute::LrAt(step_, sched_); }

  // Runs global step `step()` and returns the batch loss. Throws
  // Error{kNonFiniteLoss} if the loss is not finite.
  double TrainStep();
  ValidationResult Validate() const;

  compute::TensorList Checkpoint();
  void Restore(const compute::TensorList& tensors);
  // Gate network values and running stats only.
  compute::TensorList ExportInference();

  gates::GateNetwork<float>& gate() { return gate_; }
  classifier::Classifier<float>* classifier() {
    return classifier_ ? classifier_.get() : nullptr;
  }

 private:
  compute::ParamRefs<float> AllRefs();
  std::vector<const Example*> BatchAt(int64_t step) const;

  TrainConfig cfg_;
  compute::LrSchedule sched_;
  std::vector<Example> train_;
  std::vector<Example> val_;
  dsp::MfccExtractor extractor_;
  gates::GateNetwork<float> gate_;
  std::unique_ptr<classifier::Classifier<float>> classifier_;
  int64_t steps_per_epoch_ = 0;
  int64_t step_ = 0;
};

struct RunOptions {
  std::filesystem::path checkpoint_out;  // best training checkpoint
  std::filesystem::path export_out;      // best inference export (optional)
  std::filesystem::path metrics_out;     // metrics log (optional)
  std::ostream* log = nullptr;           // progress lines (optional)
};

struct RunResult {
  std::vector<EpochMetrics> history;
  int best_epoch = 0;
  double best_val_acc = 0.0;
  compute::TensorList best_checkpoint;
  compute::TensorList best_export;
};

// Full training run. The best epoch is the one with the highest validation
// accuracy; ties go to the later epoch.
RunResult TrainRun(const TrainConfig& cfg,
                   const std::vector<ManifestEntry>& train_manifest,
                   const std::vector<ManifestEntry>& val_manifest,
                   const RunOptions& options);

}  // namespace sgvad::train

#endif  // SGVAD_TRAIN_TRAINER_H_
