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

#include "mutlab/strategies.h"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mutlab/fuzz.h"
#include "mutlab/parser.h"
#include "test_util.h"

namespace mutlab {
namespace {

using ::mutlab::testing::ReadCorpus;

// The running example restricted to its four curated mutants.
Subject RunningSubject() {
  Subject subject;
  subject.name = "partitioned_process";
  subject.program =
      ParseProgram(ReadCorpus("examples/partitioned_process.ml0"));
  subject.meta = ::mutlab::testing::RunningExample();
  subject.code = Compile(subject.meta.program);
  PlainOptions options;
  options.track_coverage = true;
  PlainResult r = EvalPlain(subject.meta.program, "test_process", {}, options);
  subject.tests.push_back(
      {"test_process", r.outcome, r.statements, r.covered_points});
  return subject;
}

TEST(StrategyNamesTest, RoundTrip) {
  for (Strategy s : kAllStrategies) {
    EXPECT_EQ(ParseStrategy(StrategyName(s)), s);
  }
  EXPECT_FALSE(ParseStrategy("exec"));
  EXPECT_EQ(WithSwitches(Strategy::kExecTaints, false, true),
            Strategy::kExecTaintsNf);
  EXPECT_EQ(WithSwitches(Strategy::kExecTaints, true, false),
            Strategy::kExecTaintsNm);
  EXPECT_EQ(WithSwitches(Strategy::kExecTaints, false, false),
            Strategy::kExecTaintsNfNm);
  EXPECT_EQ(WithSwitches(Strategy::kModuloState, false, false),
            Strategy::kModuloState);
}

TEST(KillMatrixTest, KilledByAnyTest) {
  KillMatrix matrix({"t1", "t2", "t3"}, 2);
  matrix.set(0, Mutant(1), Verdict::kSurvived);
  matrix.set(1, Mutant(1), Verdict::kKilledException);
  matrix.set(2, Mutant(1), Verdict::kSurvived);
  EXPECT_EQ(matrix.Overall(Mutant(1)), Verdict::kKilledException);
  EXPECT_EQ(matrix.Overall(Mutant(2)), Verdict::kNotCovered);
  EXPECT_EQ(matrix.killed(), 1);
  EXPECT_EQ(matrix.not_covered(), 1);
  EXPECT_DOUBLE_EQ(matrix.score(), 0.5);
}

TEST(KillMatrixTest, DisagreementIsInconsistent) {
  RunReport a;
  a.matrix = KillMatrix({"t"}, 1);
  a.matrix.set(0, Mutant(1), Verdict::kSurvived);
  RunReport b = a;
  b.strategy = Strategy::kExecTaints;
  b.matrix.set(0, Mutant(1), Verdict::kKilledAssertion);
  std::vector<RunReport> agree = {a, a};
  EXPECT_EQ(BuildKillMatrix(agree), a.matrix);
  std::vector<RunReport> disagree = {a, b};
  EXPECT_THROW(BuildKillMatrix(disagree), InconsistencyError);
}

TEST(StrategiesTest, RunningExampleExecutions) {
  Subject subject = RunningSubject();
  // The original plus one run per covered mutant.
  EXPECT_EQ(RunStrategy(subject, Strategy::kTraditional).executions, 5);
  // One child per mutant.
  EXPECT_EQ(RunStrategy(subject, Strategy::kSplitStream).executions, 5);
  // M1 computes the same `a`; M2 and M3 share a child until their second
  // loop iteration (6 vs 8); M4 differs at `i < 0` for i = 0.
  EXPECT_EQ(RunStrategy(subject, Strategy::kModuloState).executions, 4);
  // Only M4 leaves the root.
  EXPECT_EQ(RunStrategy(subject, Strategy::kExecTaints).executions, 2);
  EXPECT_EQ(RunStrategy(subject, Strategy::kExecTaintsNfNm).executions, 2);
}

TEST(StrategiesTest, RunningExampleAgrees) {
  Subject subject = RunningSubject();
  std::vector<RunReport> reports;
  for (Strategy s : kAllStrategies) reports.push_back(RunStrategy(subject, s));
  KillMatrix matrix = BuildKillMatrix(reports);
  EXPECT_EQ(matrix.killed(), 1);
  EXPECT_EQ(matrix.Overall(Mutant(4)), Verdict::kKilledAssertion);
  EXPECT_EQ(reports[0].infra_ops, 0);
}

TEST(StrategiesTest, ZeroMutantsOneExecution) {
  Subject subject = PrepareSubject("plain", R"(
def test_a():
  x = [1, 2]
  assert not False

def test_b():
  assert True
)");
  ASSERT_EQ(subject.meta.mutant_count(), 0);
  for (Strategy s : kAllStrategies) {
    RunReport report = RunStrategy(subject, s);
    EXPECT_EQ(report.executions, 2) << StrategyName(s);
    EXPECT_EQ(report.program_stmts, 3) << StrategyName(s);
  }
}

TEST(StrategiesTest, UncoveredMutantNotExecuted) {
  Subject subject = PrepareSubject("uncovered", R"(
def f(x):
  if x > 0:
    return x
  return x - 1

def test_f():
  assert f(2) == 2
)");
  RunReport report = RunStrategy(subject, Strategy::kTraditional);
  int uncovered = 0;
  for (int i = 1; i <= subject.meta.mutant_count(); ++i) {
    uncovered += report.matrix.Overall(Mutant(i)) == Verdict::kNotCovered;
  }
  EXPECT_EQ(uncovered, 10);
  EXPECT_EQ(report.executions, 1 + subject.meta.mutant_count() - uncovered);
}

TEST(StrategiesTest, InvalidTestReported) {
  Subject subject = PrepareSubject("bad", R"(
def test_bad():
  assert 1 + 1 == 3
)");
  for (Strategy s : kAllStrategies) {
    RunReport report = RunStrategy(subject, s);
    EXPECT_FALSE(report.valid);
    EXPECT_EQ(report.invalid_test, "test_bad");
  }
}

TEST(StrategiesTest, CorpusCostOrder) {
  for (const std::string& name : ::mutlab::testing::CorpusSubjects()) {
    Subject subject = PrepareSubject(name, ReadCorpus(name));
    std::vector<RunReport> reports;
    for (Strategy s : kAllStrategies) reports.push_back(RunStrategy(subject, s));
    ASSERT_NO_THROW(BuildKillMatrix(reports)) << name;
    auto stmts = [&](Strategy s) {
      return reports[static_cast<int>(s)].program_stmts;
    };
    EXPECT_LE(stmts(Strategy::kModuloState), stmts(Strategy::kSplitStream));
    EXPECT_LE(stmts(Strategy::kExecTaints), stmts(Strategy::kExecTaintsNm));
    EXPECT_LE(stmts(Strategy::kExecTaints), stmts(Strategy::kExecTaintsNf));
    EXPECT_LE(stmts(Strategy::kExecTaintsNf), stmts(Strategy::kExecTaintsNfNm));
    EXPECT_LE(stmts(Strategy::kExecTaintsNm), stmts(Strategy::kExecTaintsNfNm));
  }
}

TEST(FuzzTest, Deterministic) {
  EXPECT_EQ(FuzzProgram(7), FuzzProgram(7));
  EXPECT_NE(FuzzProgram(7), FuzzProgram(8));
}

TEST(FuzzTest, SeedZeroGolden) {
  std::ifstream in(std::string(MUTLAB_GOLDEN_DIR) + "/fuzz_seed0.ml0");
  std::stringstream golden;
  golden << in.rdbuf();
  EXPECT_EQ(FuzzProgram(0), golden.str());
}

TEST(FuzzTest, OriginalsPassAndStrategiesAgree) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    std::string source = FuzzProgram(seed);
    Subject subject = PrepareSubject("fuzz", source);
    ASSERT_EQ(subject.tests.size(), 1u) << source;
    ASSERT_TRUE(subject.tests[0].outcome.passed()) << source;
    std::vector<RunReport> reports;
    for (Strategy s : kAllStrategies) {
      reports.push_back(RunStrategy(subject, s));
      EXPECT_EQ(reports.back().merge_violations, 0);
    }
    EXPECT_NO_THROW(BuildKillMatrix(reports)) << source;
  }
}

}  // namespace
}  // namespace mutlab
