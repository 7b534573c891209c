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

#include <map>
#include <sstream>

#include "sgvad/cli/cli.h"
#include "sgvad/common/file_util.h"
#include "test_util.h"

namespace sgvad::cli {
namespace {

using testing::TempDir;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "sgvad");
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(CliTest, HelpListsEveryFlag) {
  const std::map<std::string, std::vector<std::string>> flags = {
      {"features", {"--in", "--out", "--raw", "--model", "--gates-out", "--seed"}},
      {"toygen", {"--out", "--seed", "--per-class", "--classes"}},
      {"train", {"--config", "--seed", "--mode", "--train", "--val", "--out"}},
      {"infer", {"--model", "--segments", "--out", "--threshold", "--jobs", "--seed"}},
      {"eval", {"--scored", "--map", "--weighted-auc", "--out", "--seed"}},
      {"params", {"--config", "--seed"}},
  };
  for (const auto& [cmd, names] : flags) {
    CliRun r = Invoke({cmd, "--help"});
    EXPECT_EQ(r.code, kExitOk) << cmd;
    for (const auto& name : names) {
      EXPECT_NE(r.out.find(name), std::string::npos) << cmd << " " << name;
    }
  }
  CliRun top = Invoke({"--help"});
  EXPECT_EQ(top.code, kExitOk);
  for (const auto& [cmd, names] : flags) EXPECT_NE(top.out.find(cmd), std::string::npos);
}

TEST(CliTest, UsageErrorsExitTwo) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"params", "--bogus"}, {}, {"nosuchcommand"}, {"eval", "--map", "m.tsv"}}) {
    CliRun r = Invoke(args);
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_EQ(r.err.rfind("error: UsageError:", 0), 0u) << r.err;
  }
}

TEST(CliTest, RuntimeErrorsExitOneWithCode) {
  TempDir dir;
  CliRun r = Invoke({"features", "--in", (dir / "missing.wav").string()});
  EXPECT_EQ(r.code, kExitRuntime);
  EXPECT_EQ(r.err.rfind("error: MissingAudio:", 0), 0u) << r.err;

  WriteFileBytes(dir / "bad.cfg", "epochs = -3\n");
  r = Invoke({"params", "--config", (dir / "bad.cfg").string()});
  EXPECT_EQ(r.code, kExitRuntime);
  EXPECT_EQ(r.err.rfind("error: InvalidConfig:", 0), 0u) << r.err;

  r = Invoke({"train", "--mode", "sideways", "--train", "a", "--val", "b", "--out",
              (dir / "m").string()});
  EXPECT_EQ(r.code, kExitRuntime);
  EXPECT_EQ(r.err.rfind("error: InvalidConfig:", 0), 0u) << r.err;
}

TEST(CliTest, ParamsReportsExactCounts) {
  CliRun r = Invoke({"params"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("gate_network 7968\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("total "), std::string::npos);
}

}  // namespace
}  // namespace sgvad::cli
