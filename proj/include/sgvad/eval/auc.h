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

#ifndef SGVAD_EVAL_AUC_H_
#define SGVAD_EVAL_AUC_H_

#include <vector>

namespace sgvad::eval {

struct LabeledScore {
  double score = 0.0;
  bool positive = false;
  double weight = 1.0;  // used only by weighted AUC
};

// Area under the ROC curve, computed from ranks: the probability that a
// positive outscores a negative, with ties counted as one half. When
// `weighted` is set every positive/negative pair counts with the product of
// the two weights. Throws Error{kDegenerateLabels} without at least one
// positive and one negative, and Error{kInvalidArgument} for non-finite
// scores or non-positive weights.
double AucRoc(const std::vector<LabeledScore>& items, bool weighted = false);

}  // namespace sgvad::eval

#endif  // SGVAD_EVAL_AUC_H_
