// Copyright 2026 The Mutlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

struct Output {
  int code = -1;
  std::string out;
};

Output RunCli(const std::string& args, const std::string& env = "") {
  std::string command = env + " " + MUTLAB_CLI + " " + args + " 2>/dev/null";
  Output result;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return result;
  char buffer[4096];
  std::size_t n;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) {
    result.out.append(buffer, n);
  }
  int status = pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string Corpus(const std::string& name) {
  return std::string(MUTLAB_CORPUS_DIR) + "/" + name;
}

TEST(CliTest, AnalyzeCountsEveryMutant) {
  Output r = RunCli("analyze --program " + Corpus("prime.ml0") +
                    " --strategy exec-taints");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema"], "mutlab/1");
  EXPECT_EQ(j["mutants"], 55);
  EXPECT_EQ(j["killed"]["total"].get<int>() + j["survived"].get<int>() +
                j["not_covered"].get<int>(),
            55);
}

TEST(CliTest, NoForkNoMemoSelectsVariant) {
  Output r = RunCli("analyze --program " + Corpus("euler.ml0") +
                    " --strategy exec-taints --no-fork --no-memo");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["strategy"], "exec-taints-nf-nm");
}

TEST(CliTest, CompareHasSevenAgreeingRows) {
  Output r = RunCli("compare --program " + Corpus("euler.ml0") +
                    " --all --format csv");
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  int rows = 0;
  std::string kills;
  while (std::getline(lines, line)) {
    ++rows;
    // mutants,killed,survived,not_covered follow program and strategy.
    std::size_t second = line.find(',', line.find(',') + 1);
    std::size_t fifth = second;
    for (int i = 0; i < 4; ++i) fifth = line.find(',', fifth + 1);
    std::string cols = line.substr(second, fifth - second);
    if (kills.empty()) kills = cols;
    EXPECT_EQ(cols, kills) << line;
  }
  EXPECT_EQ(rows, 7);
}

TEST(CliTest, FuzzSmoke) {
  Output r = RunCli("fuzz --count 1 --seed 0");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("7 strategies agree"), std::string::npos);
}

TEST(CliTest, MutantsList) {
  Output r = RunCli("mutants list --program " +
                    Corpus("examples/partitioned_process.ml0"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("M1 21:9 + -> -\n", 0), 0u);
}

TEST(CliTest, InvalidTestExitsOne) {
  std::string path =
      (std::filesystem::temp_directory_path() / "mutlab_cli_bad.ml0").string();
  std::ofstream(path) << "def test_bad():\n  assert 1 == 2\n";
  Output r = RunCli("analyze --program " + path + " --strategy traditional");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(nlohmann::json::parse(r.out)["valid"], false);
  std::filesystem::remove(path);
}

TEST(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(RunCli("").code, 2);
  EXPECT_EQ(RunCli("analyze --program x.ml0").code, 2);
  EXPECT_EQ(RunCli("analyze --program missing.ml0 --strategy exec-taints").code,
            2);
  EXPECT_EQ(RunCli("analyze --program " + Corpus("euler.ml0") +
                   " --strategy nope")
                .code,
            2);
  EXPECT_EQ(RunCli("analyze --program " + Corpus("euler.ml0") +
                   " --strategy traditional --no-fork")
                .code,
            2);
}

TEST(CliTest, BudgetFromEnvironment) {
  std::string args =
      "analyze --program " + Corpus("euler.ml0") + " --strategy traditional";
  EXPECT_EQ(RunCli(args, "MUTLAB_BUDGET_MULT=0").code, 2);
  Output r = RunCli(args, "MUTLAB_BUDGET_MULT=3");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["budget_mult"], 3);
  r = RunCli(args + " --budget-mult 4", "MUTLAB_BUDGET_MULT=3");
  EXPECT_EQ(nlohmann::json::parse(r.out)["budget_mult"], 4);
}

}  // namespace
