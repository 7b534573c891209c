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

#include "sgvad/train/trainer.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "sgvad/common/error.h"
#include "sgvad/common/file_util.h"
#include "sgvad/common/rng.h"
#include "sgvad/compute/optim.h"
#include "sgvad/gates/gates.h"
#include "sgvad/train/objective.h"

namespace sgvad::train {
namespace {

enum Stream : uint64_t { kInit = 1, kShuffle = 2, kBatch = 3, kNoise = 4 };

gates::GateModelConfig GateConfigFor(const TrainConfig& cfg) {
  gates::GateModelConfig g;
  g.sigma = cfg.sigma;
  return g;
}

classifier::ClassifierConfig ClassifierConfigFor(const TrainConfig& cfg) {
  classifier::ClassifierConfig c;
  c.n_classes = cfg.n_classes;
  return c;
}

}  // namespace

std::string MetricsHeader() {
  return "epoch,step,lr,train_loss,val_acc,bg_gate_rate,speech_gate_rate";
}

std::string FormatMetrics(const EpochMetrics& m) {
  return std::to_string(m.epoch) + "," + std::to_string(m.step) + "," +
         FormatDouble(m.lr) + "," + FormatDouble(m.train_loss) + "," +
         FormatDouble(m.val_acc) + "," + FormatDouble(m.bg_gate_rate) + "," +
         FormatDouble(m.speech_gate_rate);
}

Trainer::Trainer(const TrainConfig& cfg, std::vector<Example> train_set,
                 std::vector<Example> val_set)
    : cfg_(cfg),
      train_(std::move(train_set)),
      val_(std::move(val_set)),
      gate_(GateConfigFor(cfg)) {
  cfg_.Validate();
  if (train_.empty()) {
    throw Error(ErrorCode::kEmptyBatch, "training set is empty");
  }
  if (cfg_.mode != TrainMode::kRegression) {
    classifier_ = std::make_unique<classifier::Classifier<float>>(
        ClassifierConfigFor(cfg_));
  }
  Rng init = MakeRng(cfg_.seed, {kInit});
  gate_.Init(init);
  if (classifier_) classifier_->Init(init);

  const auto n = static_cast<int64_t>(train_.size());
  steps_per_epoch_ = (n + cfg_.batch_size - 1) / cfg_.batch_size;
  sched_ = cfg_.sched;
  sched_.total_steps = steps_per_epoch_ * cfg_.epochs;
  sched_.Validate();
}

compute::ParamRefs<float> Trainer::AllRefs() {
  compute::ParamRefs<float> refs = gate_.Refs();
  if (classifier_) {
    auto more = classifier_->Refs();
    refs.params.insert(refs.params.end(), more.params.begin(), more.params.end());
    refs.buffers.insert(refs.buffers.end(), more.buffers.begin(), more.buffers.end());
  }
  return refs;
}

std::vector<const Example*> Trainer::BatchAt(int64_t step) const {
  const int64_t epoch = step / steps_per_epoch_;
  const int64_t k = step % steps_per_epoch_;
  std::vector<size_t> order(train_.size());
  std::iota(order.begin(), order.end(), size_t{0});
  Rng shuffle = MakeRng(cfg_.seed, {kShuffle, static_cast<uint64_t>(epoch)});
  std::shuffle(order.begin(), order.end(), shuffle);
  const size_t begin = static_cast<size_t>(k) * cfg_.batch_size;
  const size_t end = std::min(order.size(), begin + cfg_.batch_size);
  std::vector<const Example*> out;
  for (size_t i = begin; i < end; ++i) out.push_back(&train_[order[i]]);
  return out;
}

double Trainer::TrainStep() {
  const auto step_id = static_cast<uint64_t>(step_);
  Rng batch_rng = MakeRng(cfg_.seed, {kBatch, step_id});
  Batch batch = MakeBatch(BatchAt(step_), batch_rng, cfg_, extractor_, true);
  Rng noise_rng = MakeRng(cfg_.seed, {kNoise, step_id});
  auto eps = gates::SampleGateNoise<float>(batch.features.shape(), noise_rng,
                                           cfg_.sigma);
  auto res = ForwardBackward(gate_, classifier(), batch.features, batch.labels,
                             eps, cfg_.mode, cfg_.sigma);
  if (!std::isfinite(res.total)) {
    std::ostringstream msg;
    msg << "non-finite loss at step " << step_ << "; per-sample:";
    for (size_t i = 0; i < res.per_sample.size(); ++i) {
      msg << " [label " << batch.labels[i] << "] " << res.per_sample[i];
    }
    throw Error(ErrorCode::kNonFiniteLoss, msg.str());
  }
  auto refs = AllRefs();
  compute::SgdStep<float>(refs.params, compute::LrAt(step_, sched_), cfg_.sgd);
  ++step_;
  return res.total;
}

ValidationResult Trainer::Validate() const {
  ValidationResult out;
  size_t correct = 0, bg = 0, speech = 0;
  double bg_rate = 0.0, speech_rate = 0.0;
  for (const Example& ex : val_) {
    auto x = ClipFeatures(ex.clip, extractor_);
    auto mu = gate_.Infer(x);
    auto z = gates::DeterministicGates(mu);
    double rate = 0.0;
    for (float v : z.vec()) rate += v;
    rate /= static_cast<double>(z.size());
    const bool is_bg = ex.label == classifier::kBackgroundClass;
    (is_bg ? bg_rate : speech_rate) += rate;
    ++(is_bg ? bg : speech);

    int predicted = 0;
    if (classifier_) {
      // Expected gate value without noise.
      auto soft = gates::GatesFromNoise(mu, compute::Tensor<float>(mu.shape()));
      auto logits = classifier_->Infer(gates::GateInput(x, soft));
      predicted = static_cast<int>(
          std::max_element(logits.vec().begin(), logits.vec().end()) -
          logits.vec().begin());
      correct += predicted == ex.label;
    } else {
      const bool says_speech = rate >= 0.5;
      correct += says_speech == !is_bg;
    }
  }
  if (!val_.empty()) out.accuracy = double(correct) / double(val_.size());
  if (bg) out.bg_gate_rate = bg_rate / double(bg);
  if (speech) out.speech_gate_rate = speech_rate / double(speech);
  return out;
}

compute::TensorList Trainer::Checkpoint() {
  compute::TensorList list;
  compute::AppendState(AllRefs(), compute::StateScope::kWithOptimizer, &list);
  list.push_back(compute::PackU64("meta/step", static_cast<uint64_t>(step_)));
  list.push_back(compute::PackU64("meta/config_hash", cfg_.Hash()));
  return list;
}

void Trainer::Restore(const compute::TensorList& tensors) {
  const auto* hash = compute::FindTensor(tensors, "meta/config_hash");
  const auto* step = compute::FindTensor(tensors, "meta/step");
  if (!hash || !step) {
    throw Error(ErrorCode::kCorruptFile, "not a training checkpoint");
  }
  if (compute::UnpackU64(*hash) != cfg_.Hash()) {
    throw Error(ErrorCode::kInvalidConfig,
                "checkpoint was written with a different training config");
  }
  compute::RestoreState(tensors, compute::StateScope::kWithOptimizer, AllRefs());
  step_ = static_cast<int64_t>(compute::UnpackU64(*step));
}

compute::TensorList Trainer::ExportInference() {
  compute::TensorList list;
  compute::AppendState(gate_.Refs(), compute::StateScope::kValues, &list);
  return list;
}

RunResult TrainRun(const TrainConfig& cfg,
                   const std::vector<ManifestEntry>& train_manifest,
                   const std::vector<ManifestEntry>& val_manifest,
                   const RunOptions& options) {
  if (train_manifest.empty() || val_manifest.empty()) {
    throw Error(ErrorCode::kEmptyBatch, "train and val manifests must be non-empty");
  }
  Trainer trainer(cfg, LoadExamples(train_manifest, cfg),
                  LoadExamples(val_manifest, cfg));

  std::ofstream metrics;
  if (!options.metrics_out.empty()) {
    metrics.open(options.metrics_out, std::ios::binary | std::ios::trunc);
    if (!metrics) {
      throw Error(ErrorCode::kIo, "cannot write " + options.metrics_out.string());
    }
    metrics << MetricsHeader() << "\n";
  }

  RunResult result;
  result.best_val_acc = -1.0;
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    double loss_sum = 0.0;
    double lr = 0.0;
    for (int64_t k = 0; k < trainer.steps_per_epoch(); ++k) {
      lr = trainer.current_lr();
      try {
        loss_sum += trainer.TrainStep();
      } catch (const Error& e) {
        if (e.code() == ErrorCode::kNonFiniteLoss && !options.checkpoint_out.empty()) {
          // Keep the state that produced the bad step for inspection.
          std::filesystem::path dump = options.checkpoint_out;
          dump += ".nonfinite";
          WriteFileBytes(dump, std::string(e.what()) + "\nlr " + FormatDouble(lr) +
                                   "\nconfig\n" + cfg.ToText());
          dump += ".ckpt";
          compute::SaveTensors(dump, trainer.Checkpoint());
        }
        throw;
      }
    }
    const ValidationResult val = trainer.Validate();
    EpochMetrics m;
    m.epoch = epoch;
    m.step = trainer.step();
    m.lr = lr;
    m.train_loss = loss_sum / static_cast<double>(trainer.steps_per_epoch());
    m.val_acc = val.accuracy;
    m.bg_gate_rate = val.bg_gate_rate;
    m.speech_gate_rate = val.speech_gate_rate;
    result.history.push_back(m);
    if (metrics.is_open()) metrics << FormatMetrics(m) << "\n" << std::flush;
    if (options.log) *options.log << FormatMetrics(m) << "\n" << std::flush;

    if (m.val_acc >= result.best_val_acc) {
      result.best_val_acc = m.val_acc;
      result.best_epoch = epoch;
      result.best_checkpoint = trainer.Checkpoint();
      result.best_export = trainer.ExportInference();
    }
  }
  if (!options.checkpoint_out.empty()) {
    compute::SaveTensors(options.checkpoint_out, result.best_checkpoint);
  }
  if (!options.export_out.empty()) {
    compute::SaveTensors(options.export_out, result.best_export);
  }
  return result;
}

}  // namespace sgvad::train
