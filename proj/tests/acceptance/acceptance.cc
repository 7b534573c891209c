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

// Acceptance runner. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Pass criterion numbers to run a subset.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "grad_check.h"
#include "oracles.h"
#include "sgvad/classifier/classifier.h"
#include "sgvad/cli/cli.h"
#include "sgvad/common/error.h"
#include "sgvad/common/file_util.h"
#include "sgvad/compute/optim.h"
#include "sgvad/eval/auc.h"
#include "sgvad/eval/report.h"
#include "sgvad/eval/toy_corpus.h"
#include "sgvad/gates/gate_network.h"
#include "sgvad/gates/gates.h"
#include "sgvad/infer/scorer.h"
#include "sgvad/infer/segments.h"
#include "sgvad/train/config.h"
#include "sgvad/train/trainer.h"
#include "test_util.h"

namespace sgvad::acceptance {
namespace {

using compute::Tensor;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void Check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

using Criterion = std::function<void(Outcome&)>;

const std::filesystem::path kToyConfig =
    std::filesystem::path(SGVAD_SOURCE_DIR) / "tools" / "toy.cfg";
const std::filesystem::path kQuickstartConfig =
    std::filesystem::path(SGVAD_SOURCE_DIR) / "tools" / "quickstart.cfg";

Tensor<double> Filled(const compute::Shape& shape, double v) {
  Tensor<double> t(shape);
  for (auto& x : t.vec()) x = v;
  return t;
}

double Elapsed(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void GateMath(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  auto z = [](double mu, double eps) {
    return gates::GatesFromNoise(Filled({1}, mu), Filled({1}, eps))[0];
  };
  o.Check(z(0, 0) == 0.5, "center 0.5");
  o.Check(z(-1, 0) == 0.0 && z(0, -0.7) == 0.0, "lower clamp");
  o.Check(z(1, 0) == 1.0 && z(0.2, 0.4) == 1.0, "upper clamp");
  bool monotone = true;
  for (double a = -1.5; a < 1.5; a += 0.01) {
    monotone &= z(a, 0.1) <= z(a + 0.01, 0.1) && z(0.1, a) <= z(0.1, a + 0.01);
  }
  o.Check(monotone, "monotone in mu and eps");

  const compute::Shape shape{32, 4};
  o.Check(gates::VadScore(Filled(shape, 0.0)) == 0.0, "all closed -> 0");
  o.Check(gates::VadScore(Filled(shape, 1.0)) == 32.0, "all open -> 32");
  Tensor<double> mixed(shape);
  // Frames open 32, 16, 8, 0 channels: mean 14.
  const int open[4] = {32, 16, 8, 0};
  for (int t = 0; t < 4; ++t) {
    for (int c = 0; c < open[t]; ++c) mixed[c * 4 + t] = 1.0;
  }
  o.Check(gates::VadScore(mixed) == 14.0, "mixed-frame mean");
  const double secs = Elapsed(start);
  o.Check(secs < 1.0, "runtime < 1 s");
  o.detail << "runtime " << secs << " s";
}

void Gradients(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::string worst_label;
  size_t checked = 0;
  const auto cases = testing::AllGradCases();
  for (const auto& c : cases) {
    for (uint64_t seed = 1; seed <= 10; ++seed) {
      const auto r = c.run(seed);
      checked += r.checked;
      if (r.max_rel_err > worst) {
        worst = r.max_rel_err;
        worst_label = c.name + "/" + r.worst;
      }
    }
  }
  const double secs = Elapsed(start);
  o.Check(worst < 1e-4, "max relative error < 1e-4");
  o.Check(secs < 120.0, "runtime < 2 min");
  o.detail << cases.size() << " cases x 10 seeds, " << checked << " entries, max rel err "
           << worst << " (" << worst_label << "), " << secs << " s";
}

void ExpectedL0(Outcome& o) {
  const int draws = 100000;
  double worst_se = 0.0;
  for (double mu : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
    Rng rng = MakeRng(2026, {static_cast<uint64_t>((mu + 2) * 10)});
    auto zs = gates::SampleGates(Filled({1, 1, draws}, mu), rng, gates::kDefaultSigma);
    double open = 0.0;
    for (double v : zs.vec()) open += v > 0.0;
    const double p = open / draws;
    const double expect = gates::ExpectedL0(Filled({1}, mu), gates::kDefaultSigma);
    const double se = std::sqrt(std::max(expect * (1 - expect), 1e-12) / draws);
    const double dev = se > 1e-9 ? std::abs(p - expect) / se : 0.0;
    worst_se = std::max(worst_se, dev);
    o.Check(std::abs(p - expect) <= 3 * se + 1e-12, "mu " + std::to_string(mu));
  }
  const double half = gates::ExpectedL0(Filled({1}, -0.5), gates::kDefaultSigma);
  o.Check(std::abs(half - 0.5) <= 1e-12, "mu = -0.5 gives 0.5");
  o.detail << "worst deviation " << worst_se << " SE";
}

void ParameterBudget(Outcome& o) {
  gates::GateModelConfig gate_cfg;
  classifier::ClassifierConfig clf_cfg;
  const auto report = classifier::CountParams(gate_cfg, clf_cfg);
  o.Check(report.gate == 7968, "gate network 7968");
  o.Check(std::abs(double(report.gate) - 7800.0) <= 780.0, "within 10% of 7.8K");
  o.Check(report.total() >= 0.7 * 80400 && report.total() <= 1.3 * 80400,
          "total within [0.7, 1.3] x 80.4K");
  o.detail << "gate " << report.gate << ", classifier " << report.classifier
           << ", total " << report.total();
}

// Toy corpus and trained models shared by criteria 6 and 7.
struct ToyRun {
  double test_auc = 0.0;
  double bg_rate = 0.0;
  double speech_rate = 0.0;
  double val_acc = 0.0;
  double seconds = 0.0;
};

class ToyExperiment {
 public:
  const ToyRun& Get(train::TrainMode mode) {
    if (!corpus_) {
      eval::ToyCorpusConfig cfg;
      cfg.seed = 1;
      corpus_ = eval::MakeToyCorpus(cfg, dir_.path() / "toy");
    }
    auto it = runs_.find(mode);
    if (it != runs_.end()) return it->second;
    return runs_[mode] = Train(mode);
  }

 private:
  ToyRun Train(train::TrainMode mode) {
    const auto start = std::chrono::steady_clock::now();
    train::TrainConfig cfg = train::LoadTrainConfig(kToyConfig);
    cfg.mode = mode;
    train::RunOptions opts;
    const std::string name = train::TrainModeName(mode);
    opts.checkpoint_out = dir_.path() / (name + ".ckpt");
    opts.export_out = dir_.path() / (name + ".vad");
    const auto result = train::TrainRun(cfg, train::ReadManifest(corpus_->train_manifest),
                                        train::ReadManifest(corpus_->val_manifest), opts);
    const auto scorer = infer::VadScorer::FromFile(opts.export_out);
    const auto scored = infer::ScoreSegments(
        scorer, infer::ReadSegments(corpus_->test_segments),
        corpus_->test_segments.parent_path(), 1);
    ToyRun run;
    run.val_acc = result.best_val_acc;
    run.test_auc = eval::Evaluate(scored, eval::ReadLabelMap(corpus_->label_map)).auc;
    // Score / 32 is the clip's deterministic open-gate rate.
    size_t n_bg = 0, n_sp = 0;
    for (const auto& s : scored) {
      const bool bg = s.segment.label == eval::ToyLabelName(0);
      (bg ? run.bg_rate : run.speech_rate) += s.score / 32.0;
      ++(bg ? n_bg : n_sp);
    }
    run.bg_rate /= double(n_bg);
    run.speech_rate /= double(n_sp);
    run.seconds = Elapsed(start);
    std::cerr << "  trained " << name << ": val_acc " << run.val_acc << " test_auc "
              << run.test_auc << " bg_rate " << run.bg_rate << " speech_rate "
              << run.speech_rate << " (" << run.seconds << " s)\n";
    return run;
  }

  testing::TempDir dir_;
  std::optional<eval::ToyCorpus> corpus_;
  std::map<train::TrainMode, ToyRun> runs_;
};

ToyExperiment& Toy() {
  static ToyExperiment toy;
  return toy;
}

void ToyEndToEnd(Outcome& o) {
  const train::TrainConfig cfg = train::LoadTrainConfig(kToyConfig);
  o.Check(cfg.epochs <= 30, "at most 30 epochs");
  const ToyRun& r = Toy().Get(train::TrainMode::kFull);
  o.Check(r.seconds < 900.0, "training under 15 min");
  o.Check(r.test_auc >= 0.95, "test AUC >= 0.95");
  o.Check(r.bg_rate <= 0.5 * r.speech_rate, "background rate <= half speech rate");
  o.Check(r.val_acc >= 0.9, "val accuracy >= 0.9");
  o.detail << cfg.epochs << " epochs, test AUC " << r.test_auc << ", gate rate bg "
           << r.bg_rate << " speech " << r.speech_rate << ", val acc " << r.val_acc
           << ", " << r.seconds << " s";
}

void AblationOrdering(Outcome& o) {
  const ToyRun& full = Toy().Get(train::TrainMode::kFull);
  const ToyRun& no_lsg = Toy().Get(train::TrainMode::kNoLsg);
  const ToyRun& uncond = Toy().Get(train::TrainMode::kUnconditionalLsg);
  o.Check(full.test_auc >= no_lsg.test_auc, "full >= no_lsg");
  o.Check(uncond.test_auc >= no_lsg.test_auc, "unconditional_lsg >= no_lsg");
  o.detail << "test AUC full " << full.test_auc << ", unconditional_lsg "
           << uncond.test_auc << ", no_lsg " << no_lsg.test_auc;
}

void Oracles(Outcome& o) {
  Rng rng = MakeRng(8);
  double mfcc_worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto clip = testing::WhiteNoise(rng, Uniform(rng, 0.01, 0.3),
                                          UniformInt(rng, 400, 4000));
    const auto f = dsp::ComputeMfcc(clip);
    const auto ref = testing::ReferenceMfcc(clip);
    for (size_t c = 0; c < f.channels(); ++c) {
      for (size_t t = 0; t < f.frames(); ++t) {
        mfcc_worst = std::max(mfcc_worst, std::abs(ref[c][t] - f.at(c, t)));
      }
    }
  }
  double auc_worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    std::vector<eval::LabeledScore> items(UniformInt(rng, 2, 200));
    for (auto& it : items) {
      it.score = UniformInt(rng, 0, 1) ? UniformInt(rng, 0, 32) : Uniform(rng, 0, 32);
      it.positive = UniformInt(rng, 0, 1) == 1;
      it.weight = Uniform(rng, 0.1, 5.0);
    }
    items[0].positive = true;
    items[1].positive = false;
    auc_worst = std::max(auc_worst, std::abs(eval::AucRoc(items) -
                                             testing::BruteForceAuc(items)));
  }
  o.Check(mfcc_worst < 1e-3, "MFCC max abs diff < 1e-3");
  o.Check(auc_worst <= 1e-12, "AUC within 1e-12");
  o.detail << "MFCC max abs diff " << mfcc_worst << " over 10 clips, AUC max diff "
           << auc_worst << " over 100 instances";
}

void ScheduleAndOptimizer(Outcome& o) {
  compute::LrSchedule s;
  s.total_steps = 1000;
  o.Check(compute::LrAt(50, s) == 1e-2, "end of warmup");
  bool hold = true;
  for (int64_t k = 50; k <= 500; ++k) hold &= compute::LrAt(k, s) == 1e-2;
  o.Check(hold, "hold");
  o.Check(compute::LrAt(1000, s) == 1e-4, "final step");
  double jump = 0.0;
  for (int64_t k = 1; k <= 1000; ++k) {
    jump = std::max(jump, std::abs(compute::LrAt(k, s) - compute::LrAt(k - 1, s)));
  }
  o.Check(jump <= s.max_lr / 50.0 + 1e-15, "continuity");

  compute::Parameter<double> p("w", {1}, true);
  p.value[0] = 1.0;
  std::vector<compute::Parameter<double>*> params{&p};
  p.grad[0] = 1.0;
  compute::SgdStep<double>(params, 0.1, compute::SgdConfig{0.9, 0.0});
  const double first = p.value[0];
  p.grad[0] = 1.0;
  compute::SgdStep<double>(params, 0.1, compute::SgdConfig{0.9, 0.0});
  o.Check(std::abs(first - 0.9) <= 1e-12 && std::abs(p.value[0] - 0.71) <= 1e-12,
          "momentum trace 1 -> 0.9 -> 0.71");
  o.detail << "largest step change " << jump << ", trace " << first << " -> "
           << p.value[0];
}

struct QuickstartOutput {
  std::string metrics;
  std::string scored;
  std::string report;
};

QuickstartOutput RunQuickstart(const std::filesystem::path& dir, Outcome& o) {
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const std::string d = dir.string();
  const std::vector<std::vector<std::string>> steps = {
      {"toygen", "--out", d + "/toy", "--per-class", "40", "--seed", "3"},
      {"train", "--config", kQuickstartConfig.string(), "--seed", "3", "--train",
       d + "/toy/train.tsv", "--val", d + "/toy/val.tsv", "--out", d + "/model.ckpt"},
      {"infer", "--model", d + "/model.ckpt.vad", "--segments",
       d + "/toy/test_segments.csv", "--out", d + "/scored.csv", "--threshold", "16"},
      {"eval", "--scored", d + "/scored.csv", "--map", d + "/toy/label_map.tsv", "--out",
       d + "/report.txt"},
  };
  for (auto args : steps) {
    args.insert(args.begin(), "sgvad");
    std::ostringstream out, err;
    const int code = cli::RunCli(args, out, err);
    o.Check(code == 0, args[1] + " exited " + std::to_string(code) + ": " + err.str());
    if (code != 0) return {};
  }
  return {ReadFileBytes(dir / "model.ckpt.metrics"), ReadFileBytes(dir / "scored.csv"),
          ReadFileBytes(dir / "report.txt")};
}

void Determinism(Outcome& o) {
  o.Check(train::LoadTrainConfig(kQuickstartConfig).epochs == 2, "quickstart trains 2 epochs");
  testing::TempDir dir;
  const auto first = RunQuickstart(dir / "run", o);
  const auto second = RunQuickstart(dir / "run", o);
  o.Check(!first.metrics.empty() && first.metrics == second.metrics,
          "metrics logs identical");
  o.Check(!first.scored.empty() && first.scored == second.scored, "scored CSVs identical");
  o.Check(first.report == second.report, "eval reports identical");
  o.detail << "metrics " << first.metrics.size() << " bytes, scored CSV "
           << first.scored.size() << " bytes";
}

}  // namespace
}  // namespace sgvad::acceptance

int main(int argc, char** argv) {
  using namespace sgvad::acceptance;
  const std::vector<std::pair<std::string, Criterion>> criteria = {
      {"full-scale corpora results", nullptr},
      {"gate math", GateMath},
      {"gradient correctness", Gradients},
      {"expected-L0 correctness", ExpectedL0},
      {"parameter budget", ParameterBudget},
      {"toy end-to-end", ToyEndToEnd},
      {"ablation ordering", AblationOrdering},
      {"oracle equivalences", Oracles},
      {"schedule and optimizer", ScheduleAndOptimizer},
      {"determinism", Determinism},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    const auto& [name, run] = criteria[i];
    if (!run) {
      std::cout << "SKIP " << id << " " << name
                << ": needs licensed corpora and days of training; out of scope" << std::endl;
      continue;
    }
    Outcome o;
    try {
      run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << id << " " << name << ": "
              << o.detail.str() << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
