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

#ifndef SGVAD_CLI_CLI_H_
#define SGVAD_CLI_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace sgvad::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

// Runs one command line; args[0] is the program name. Runtime failures are
// reported on `err` as a single line `error: <ErrorName>: <message>`.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace sgvad::cli

#endif  // SGVAD_CLI_CLI_H_
