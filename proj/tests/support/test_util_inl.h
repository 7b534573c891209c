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

#ifndef SGVAD_TESTS_SUPPORT_TEST_UTIL_INL_H_
#define SGVAD_TESTS_SUPPORT_TEST_UTIL_INL_H_

#include <gtest/gtest.h>

namespace sgvad::testing {

template <typename Fn>
ErrorCode CodeOf(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  } catch (const std::exception& e) {
    ADD_FAILURE() << "unexpected exception: " << e.what();
    return ErrorCode::kIo;
  }
  ADD_FAILURE() << "expected an sgvad::Error";
  return ErrorCode::kIo;
}

}  // namespace sgvad::testing

#endif  // SGVAD_TESTS_SUPPORT_TEST_UTIL_INL_H_
