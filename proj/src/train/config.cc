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

#include "sgvad/train/config.h"

#include <charconv>
#include <functional>
#include <set>
#include <vector>

#include "sgvad/common/error.h"
#include "sgvad/common/file_util.h"

namespace sgvad::train {
namespace {

[[noreturn]] void Invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidConfig, what);
}

template <typename V>
V ParseNumber(std::string_view key, std::string_view text) {
  V v{};
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    Invalid("bad value for " + std::string(key) + ": '" + std::string(text) + "'");
  }
  return v;
}

struct Field {
  const char* key;
  std::function<std::string(const TrainConfig&)> get;
  std::function<void(TrainConfig&, std::string_view)> set;
};

template <typename V>
Field NumberField(const char* key, V TrainConfig::*member) {
  return {key,
          [member](const TrainConfig& c) {
            if constexpr (std::is_floating_point_v<V>) {
              return FormatDouble(c.*member);
            } else {
              return std::to_string(c.*member);
            }
          },
          [member, key](TrainConfig& c, std::string_view v) {
            c.*member = ParseNumber<V>(key, v);
          }};
}

template <typename S, typename V>
Field NestedField(const char* key, S TrainConfig::*outer, V S::*inner) {
  return {key,
          [outer, inner](const TrainConfig& c) {
            if constexpr (std::is_floating_point_v<V>) {
              return FormatDouble(c.*outer.*inner);
            } else {
              return std::to_string(c.*outer.*inner);
            }
          },
          [outer, inner, key](TrainConfig& c, std::string_view v) {
            (c.*outer).*inner = ParseNumber<V>(key, v);
          }};
}

const std::vector<Field>& Fields() {
  using dsp::AugmentConfig;
  using compute::LrSchedule;
  using compute::SgdConfig;
  static const std::vector<Field> fields = {
      NumberField("epochs", &TrainConfig::epochs),
      NumberField("batch_size", &TrainConfig::batch_size),
      {"mode", [](const TrainConfig& c) { return std::string(TrainModeName(c.mode)); },
       [](TrainConfig& c, std::string_view v) { c.mode = ParseTrainMode(v); }},
      NumberField("seed", &TrainConfig::seed),
      NumberField("n_classes", &TrainConfig::n_classes),
      NumberField("sigma", &TrainConfig::sigma),
      NumberField("max_background_s", &TrainConfig::max_background_s),
      NumberField("crop_s", &TrainConfig::crop_s),
      NestedField("momentum", &TrainConfig::sgd, &SgdConfig::momentum),
      NestedField("weight_decay", &TrainConfig::sgd, &SgdConfig::weight_decay),
      NestedField("warmup_ratio", &TrainConfig::sched, &LrSchedule::warmup_ratio),
      NestedField("hold_ratio", &TrainConfig::sched, &LrSchedule::hold_ratio),
      NestedField("max_lr", &TrainConfig::sched, &LrSchedule::max_lr),
      NestedField("min_lr", &TrainConfig::sched, &LrSchedule::min_lr),
      NestedField("decay_power", &TrainConfig::sched, &LrSchedule::decay_power),
      NestedField("time_shift_ms", &TrainConfig::augment, &AugmentConfig::time_shift_ms),
      NestedField("noise_db_min", &TrainConfig::augment, &AugmentConfig::noise_db_min),
      NestedField("noise_db_max", &TrainConfig::augment, &AugmentConfig::noise_db_max),
      NestedField("noise_prob", &TrainConfig::augment, &AugmentConfig::noise_prob),
      NestedField("time_masks", &TrainConfig::augment, &AugmentConfig::time_masks),
      NestedField("time_mask_width", &TrainConfig::augment, &AugmentConfig::time_mask_width),
      NestedField("freq_masks", &TrainConfig::augment, &AugmentConfig::freq_masks),
      NestedField("freq_mask_width", &TrainConfig::augment, &AugmentConfig::freq_mask_width),
      NestedField("cutout_rects", &TrainConfig::augment, &AugmentConfig::cutout_rects),
      NestedField("cutout_time_width", &TrainConfig::augment, &AugmentConfig::cutout_time_width),
      NestedField("cutout_freq_width", &TrainConfig::augment, &AugmentConfig::cutout_freq_width),
  };
  return fields;
}

}  // namespace

const char* TrainModeName(TrainMode mode) {
  switch (mode) {
    case TrainMode::kFull: return "full";
    case TrainMode::kRegression: return "regression";
    case TrainMode::kNoLsg: return "no_lsg";
    case TrainMode::kUnconditionalLsg: return "unconditional_lsg";
  }
  return "full";
}

TrainMode ParseTrainMode(std::string_view name) {
  if (name == "full") return TrainMode::kFull;
  if (name == "regression") return TrainMode::kRegression;
  if (name == "no_lsg") return TrainMode::kNoLsg;
  if (name == "unconditional_lsg") return TrainMode::kUnconditionalLsg;
  Invalid("unknown mode '" + std::string(name) +
          "' (want full|regression|no_lsg|unconditional_lsg)");
}

void TrainConfig::Validate() const {
  if (epochs < 1) Invalid("epochs must be positive");
  if (batch_size < 1) Invalid("batch_size must be positive");
  if (n_classes < 2) Invalid("n_classes must be >= 2");
  if (!(sigma > 0)) Invalid("sigma must be positive");
  if (!(max_background_s > 0) || !(crop_s > 0)) {
    Invalid("max_background_s and crop_s must be positive");
  }
  sgd.Validate();
  compute::LrSchedule s = sched;
  s.total_steps = 1;
  s.Validate();
  augment.Validate();
}

std::string TrainConfig::ToText() const {
  std::string out;
  for (const Field& f : Fields()) {
    out += f.key;
    out += " = ";
    out += f.get(*this);
    out += "\n";
  }
  return out;
}

uint64_t TrainConfig::Hash() const {
  uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char ch : ToText()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

TrainConfig ParseTrainConfig(std::string_view text) {
  TrainConfig cfg;
  std::set<std::string> seen;
  int line_no = 0;
  for (const std::string& raw : SplitString(text, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      Invalid("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(Trim(line.substr(0, eq)));
    const std::string_view value = Trim(line.substr(eq + 1));
    const Field* field = nullptr;
    for (const Field& f : Fields()) {
      if (key == f.key) field = &f;
    }
    if (!field) Invalid("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    if (!seen.insert(key).second) Invalid("duplicate key '" + key + "'");
    field->set(cfg, value);
  }
  cfg.Validate();
  return cfg;
}

TrainConfig LoadTrainConfig(const std::filesystem::path& path) {
  return ParseTrainConfig(ReadFileBytes(path));
}

}  // namespace sgvad::train
