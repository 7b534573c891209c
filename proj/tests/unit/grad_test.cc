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

#include <gtest/gtest.h>

#include "grad_check.h"

namespace sgvad::testing {
namespace {

class GradTest : public ::testing::TestWithParam<size_t> {};

TEST_P(GradTest, MatchesCentralDifferencesOverTenSeeds) {
  const GradCase c = AllGradCases()[GetParam()];
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const GradCheckResult r = c.run(seed);
    EXPECT_GT(r.checked, 0u);
    EXPECT_LT(r.max_rel_err, kGradTolerance)
        << c.name << " seed " << seed << " worst " << r.worst;
  }
}

INSTANTIATE_TEST_SUITE_P(AllOps, GradTest,
                         ::testing::Range<size_t>(0, AllGradCases().size()),
                         [](const ::testing::TestParamInfo<size_t>& info) {
                           return AllGradCases()[info.param].name;
                         });

}  // namespace
}  // namespace sgvad::testing
