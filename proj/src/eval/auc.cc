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

#include "sgvad/eval/auc.h"

#include <algorithm>
#include <cmath>

#include "sgvad/common/error.h"

namespace sgvad::eval {

double AucRoc(const std::vector<LabeledScore>& items, bool weighted) {
  std::vector<const LabeledScore*> sorted;
  sorted.reserve(items.size());
  size_t n_pos = 0;
  for (const auto& item : items) {
    if (!std::isfinite(item.score)) {
      throw Error(ErrorCode::kInvalidArgument, "AUC input holds a non-finite score");
    }
    if (weighted && !(item.weight > 0.0 && std::isfinite(item.weight))) {
      throw Error(ErrorCode::kInvalidArgument, "AUC weights must be positive");
    }
    n_pos += item.positive;
    sorted.push_back(&item);
  }
  if (n_pos == 0 || n_pos == items.size()) {
    throw Error(ErrorCode::kDegenerateLabels,
                "AUC needs at least one positive and one negative item");
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const LabeledScore* a, const LabeledScore* b) { return a->score < b->score; });

  // Walk groups of tied scores upward. Each positive in a group beats every
  // negative below it and ties with the negatives inside the group.
  double neg_below = 0.0, pos_total = 0.0, area = 0.0;
  for (size_t i = 0; i < sorted.size();) {
    size_t j = i;
    double pos_group = 0.0, neg_group = 0.0;
    for (; j < sorted.size() && sorted[j]->score == sorted[i]->score; ++j) {
      const double w = weighted ? sorted[j]->weight : 1.0;
      (sorted[j]->positive ? pos_group : neg_group) += w;
    }
    area += pos_group * (neg_below + 0.5 * neg_group);
    neg_below += neg_group;
    pos_total += pos_group;
    i = j;
  }
  return area / (pos_total * neg_below);
}

}  // namespace sgvad::eval
