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

#include "sgvad/cli/cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <optional>

#include "sgvad/classifier/classifier.h"
#include "sgvad/common/error.h"
#include "sgvad/common/file_util.h"
#include "sgvad/compute/checkpoint.h"
#include "sgvad/dsp/audio.h"
#include "sgvad/dsp/feature_io.h"
#include "sgvad/dsp/features.h"
#include "sgvad/eval/report.h"
#include "sgvad/eval/toy_corpus.h"
#include "sgvad/gates/gate_network.h"
#include "sgvad/infer/scorer.h"
#include "sgvad/train/config.h"
#include "sgvad/train/data.h"
#include "sgvad/train/trainer.h"

namespace sgvad::cli {
namespace {

struct Options {
  std::string config = "default";
  std::optional<uint64_t> seed;
  std::optional<std::string> mode;
  std::string train, val;
  std::string model, segments, scored, map, out, in;
  std::optional<double> threshold;
  int jobs = 1;
  bool weighted_auc = false;
  bool raw = false;
  std::string gates_out;
  int per_class = 200;
  int classes = 5;
};

train::TrainConfig ResolveConfig(const Options& o) {
  train::TrainConfig cfg =
      o.config == "default" ? train::TrainConfig{} : train::LoadTrainConfig(o.config);
  if (o.seed) cfg.seed = *o.seed;
  if (o.mode) cfg.mode = train::ParseTrainMode(*o.mode);
  cfg.Validate();
  return cfg;
}

void RunFeatures(const Options& o, std::ostream& out) {
  const dsp::AudioClip clip = dsp::LoadWav(o.in);
  const dsp::MfccExtractor extractor;
  dsp::FeatureMatrix f = extractor.Compute(clip);
  if (!o.raw) f = dsp::NormalizeFeatures(f);
  out << "samples " << clip.size() << " frames " << f.frames() << " channels "
      << f.channels() << (o.raw ? " raw" : " normalized") << "\n";
  for (size_t c = 0; c < f.channels(); ++c) {
    double mean = 0.0;
    for (float v : f.channel(c)) mean += v;
    mean /= static_cast<double>(f.frames());
    out << "c" << c << " mean " << FormatDouble(mean) << "\n";
  }
  if (!o.out.empty()) dsp::WriteMatrixDump(o.out, dsp::kFeatureMagic, f);
  if (!o.gates_out.empty()) {
    if (o.model.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "--gates-out needs --model");
    }
    auto net = gates::LoadGateNetwork(compute::LoadTensors(o.model));
    const dsp::FeatureMatrix norm =
        o.raw ? dsp::NormalizeFeatures(f) : f;
    compute::Tensor<float> x({1, norm.channels(), norm.frames()}, norm.values());
    auto z = gates::DeterministicGates(net.Infer(x));
    dsp::FeatureMatrix zm(norm.channels(), norm.frames());
    zm.values() = z.vec();
    dsp::WriteMatrixDump(o.gates_out, dsp::kGateMagic, zm);
  }
}

void RunToygen(const Options& o, std::ostream& out) {
  eval::ToyCorpusConfig cfg;
  cfg.seed = o.seed.value_or(0);
  cfg.n_per_class = o.per_class;
  cfg.n_speech_classes = o.classes;
  const eval::ToyCorpus corpus = eval::MakeToyCorpus(cfg, o.out);
  out << "wrote " << corpus.clips.size() << " clips to " << o.out << "\n";
}

void RunTrain(const Options& o, std::ostream& out) {
  train::TrainConfig cfg = ResolveConfig(o);
  train::RunOptions run;
  run.checkpoint_out = o.out;
  run.export_out = o.out + ".vad";
  run.metrics_out = o.out + ".metrics";
  run.log = &out;
  out << train::MetricsHeader() << "\n";
  const auto result = train::TrainRun(cfg, train::ReadManifest(o.train),
                                      train::ReadManifest(o.val), run);
  out << "best epoch " << result.best_epoch << " val_acc "
      << FormatDouble(result.best_val_acc) << "\n";
}

void RunInfer(const Options& o, std::ostream& out) {
  if (o.jobs < 1) throw Error(ErrorCode::kInvalidArgument, "--jobs must be >= 1");
  if (o.threshold) infer::Decide(0.0, *o.threshold);  // validates the range
  const auto scorer = infer::VadScorer::FromFile(o.model);
  const auto segments = infer::ReadSegments(o.segments);
  const auto scored = infer::ScoreSegments(
      scorer, segments, std::filesystem::path(o.segments).parent_path(), o.jobs);
  infer::WriteScored(o.out, scored, o.threshold);
  out << "scored " << scored.size() << " segments\n";
}

void RunEval(const Options& o, std::ostream& out) {
  const auto report =
      eval::Evaluate(infer::ReadScored(o.scored), eval::ReadLabelMap(o.map));
  const std::string text = eval::FormatReport(report, o.weighted_auc);
  out << text;
  if (!o.out.empty()) WriteFileBytes(o.out, text);
}

void RunParams(const Options& o, std::ostream& out) {
  const train::TrainConfig cfg = ResolveConfig(o);
  gates::GateModelConfig gate_cfg;
  gate_cfg.sigma = cfg.sigma;
  classifier::ClassifierConfig clf_cfg;
  clf_cfg.n_classes = cfg.n_classes;
  const auto report = classifier::CountParams(gate_cfg, clf_cfg);
  out << "gate_network " << report.gate << "\n";
  out << "classifier " << report.classifier << "\n";
  out << "total " << report.total() << "\n";
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  Options o;
  CLI::App app{"Segment-level voice activity detection with stochastic gates",
               "sgvad"};
  app.require_subcommand(1);

  auto add_seed = [&](CLI::App* cmd, const char* what) {
    cmd->add_option("--seed", o.seed, what);
  };
  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("--config", o.config,
                    "training config file (key = value lines) or 'default'")
        ->capture_default_str();
  };

  CLI::App* features = app.add_subcommand("features", "Compute MFCC features of a WAV file");
  features->add_option("--in", o.in, "input WAV (16 kHz mono PCM16)")->required();
  features->add_option("--out", o.out, "write the feature matrix as an SGF1 dump");
  features->add_flag("--raw", o.raw, "skip per-channel normalization");
  features->add_option("--model", o.model, "model file used by --gates-out");
  features->add_option("--gates-out", o.gates_out,
                       "write the binary inference gates as an SGZ1 dump");
  add_seed(features, "accepted for uniformity; feature extraction is deterministic");

  CLI::App* toygen = app.add_subcommand("toygen", "Generate the synthetic toy corpus");
  toygen->add_option("--out", o.out, "output folder")->required();
  add_seed(toygen, "corpus seed (default 0)");
  toygen->add_option("--per-class", o.per_class, "clips per class")
      ->capture_default_str();
  toygen->add_option("--classes", o.classes, "number of speech-like classes")
      ->capture_default_str();

  CLI::App* trainc = app.add_subcommand(
      "train", "Train the gate network; writes OUT, OUT.vad and OUT.metrics");
  add_config(trainc);
  add_seed(trainc, "overrides the config seed");
  trainc->add_option("--mode", o.mode,
                     "full | regression | no_lsg | unconditional_lsg (overrides config)");
  trainc->add_option("--train", o.train, "training manifest")->required();
  trainc->add_option("--val", o.val, "validation manifest")->required();
  trainc->add_option("--out", o.out, "training checkpoint path")->required();

  CLI::App* inferc = app.add_subcommand("infer", "Score labeled segments with a model");
  inferc->add_option("--model", o.model, "training checkpoint or OUT.vad export")
      ->required();
  inferc->add_option("--segments", o.segments, "CSV audio_path,start_s,end_s,label")
      ->required();
  inferc->add_option("--out", o.out, "scored CSV")->required();
  inferc->add_option("--threshold", o.threshold,
                     "also write a speech/non_speech decision column (score >= threshold)");
  inferc->add_option("--jobs", o.jobs, "audio files scored concurrently")
      ->capture_default_str();
  add_seed(inferc, "accepted for uniformity; scoring is deterministic");

  CLI::App* evalc = app.add_subcommand("eval", "AUC-ROC report for scored segments");
  evalc->add_option("--scored", o.scored, "scored CSV from infer")->required();
  evalc->add_option("--map", o.map, "label map, lines label<TAB>pos|neg")->required();
  evalc->add_option("--weighted-auc", o.weighted_auc,
                    "headline AUC weights segments by duration (true|false)")
      ->capture_default_str();
  evalc->add_option("--out", o.out, "also write the report to this file");
  add_seed(evalc, "accepted for uniformity; evaluation is deterministic");

  CLI::App* params = app.add_subcommand("params", "Print exact parameter counts");
  add_config(params);
  add_seed(params, "accepted for uniformity");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: UsageError: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (features->parsed()) RunFeatures(o, out);
    if (toygen->parsed()) RunToygen(o, out);
    if (trainc->parsed()) RunTrain(o, out);
    if (inferc->parsed()) RunInfer(o, out);
    if (evalc->parsed()) RunEval(o, out);
    if (params->parsed()) RunParams(o, out);
  } catch (const Error& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "error: " << ErrorCodeName(e.code()) << ": " << msg << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: Internal: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace sgvad::cli
