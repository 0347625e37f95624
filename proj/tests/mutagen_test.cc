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

#include "mutlab/mutagen.h"

#include <set>
#include <string>

#include "gtest/gtest.h"
#include "mutlab/eval.h"
#include "mutlab/parser.h"
#include "test_util.h"

namespace mutlab {
namespace {

using testing::ReadCorpus;

TEST(MutagenTest, ArithmeticPointHasTenReplacements) {
  auto points = DiscoverMutationPoints(ParseProgram("def f(a, b):\n  return a + b\n"));
  ASSERT_EQ(points.size(), 1u);
  EXPECT_EQ(points[0].op_class, OpClass::kArithmetic);
  EXPECT_EQ(points[0].replacements,
            (std::vector<BinaryOp>{BinaryOp::kSub, BinaryOp::kMul,
                                   BinaryOp::kDiv, BinaryOp::kMod,
                                   BinaryOp::kShl, BinaryOp::kShr,
                                   BinaryOp::kBitOr, BinaryOp::kBitXor,
                                   BinaryOp::kBitAnd, BinaryOp::kFloorDiv}));
}

TEST(MutagenTest, ComparisonPointHasFiveReplacements) {
  auto points = DiscoverMutationPoints(
      ParseProgram("def f(i, counts):\n  return i < counts\n"));
  ASSERT_EQ(points.size(), 1u);
  EXPECT_EQ(points[0].op_class, OpClass::kComparison);
  EXPECT_EQ(points[0].replacements.size(), 5u);
  EXPECT_EQ(EnumerateMutants(points).size(), 5u);
}

TEST(MutagenTest, NoBinaryOperatorsMeansNoPoints) {
  Program p = ParseProgram("def f(a):\n  a += 1\n  return -a\n");
  EXPECT_TRUE(DiscoverMutationPoints(p).empty());
  EXPECT_TRUE(EnumerateMutants({}).empty());
  MetaProgram meta = BuildMetaMutant(p);
  EXPECT_EQ(PrintProgram(EraseMeta(meta.program)), PrintProgram(p));
}

TEST(MutagenTest, PointsFollowPreOrder) {
  auto points = DiscoverMutationPoints(ParseProgram(
      "def f(a, b):\n  x = (a + b) * (a < b)\n  while x > 1:\n    x = x // 2\n"
      "  return x\n"));
  ASSERT_EQ(points.size(), 5u);
  EXPECT_EQ(points[0].original, BinaryOp::kMul);
  EXPECT_EQ(points[1].original, BinaryOp::kAdd);
  EXPECT_EQ(points[2].original, BinaryOp::kLt);
  EXPECT_EQ(points[3].original, BinaryOp::kGt);
  EXPECT_EQ(points[4].original, BinaryOp::kFloorDiv);
  auto mutants = EnumerateMutants(points);
  EXPECT_EQ(mutants.size(), 10u + 10u + 5u + 5u + 10u);
  EXPECT_EQ(mutants[0].id, Mutant(1));
  EXPECT_EQ(mutants.back().id, Mutant(40));
  EXPECT_EQ(mutants[20].point, 2);
}

TEST(MutagenTest, OneArithmeticAndOneComparisonGiveFifteenMutants) {
  auto points = DiscoverMutationPoints(
      ParseProgram("def f(a):\n  return a * 2 == 4\n"));
  EXPECT_EQ(EnumerateMutants(points).size(), 15u);
}

TEST(MutagenTest, RunningExampleMetaMutant) {
  MetaProgram meta = testing::RunningExample();
  EXPECT_EQ(meta.mutant_count(), 4);
  EXPECT_EQ(meta.points.size(), 3u);
  std::string printed = PrintProgram(meta.program);
  EXPECT_NE(printed.find("a = @T(<M0: a + 1>, <M1: a << 1>)"),
            std::string::npos)
      << printed;
  EXPECT_NE(printed.find("a = @T(<M0: a / 2>, <M2: a + 2>, <M3: a * 2>)"),
            std::string::npos);
  EXPECT_NE(printed.find("while @C(i < counts):"), std::string::npos);
  EXPECT_NE(printed.find("if @C(@T(<M0: i < 0>, <M4: i <= 0>)):"),
            std::string::npos);
  EXPECT_NE(printed.find("$process = wrap(process)"), std::string::npos);
  EXPECT_EQ(printed.find("$test_process"), std::string::npos);
}

TEST(MutagenTest, RestrictKeepsOnlySelectedVariants) {
  MetaProgram meta = testing::RunningExample();
  std::string restricted =
      PrintProgram(RestrictMeta(meta, {Mutant(2)}).program);
  EXPECT_NE(restricted.find("a = @T(<M0: a / 2>, <M2: a + 2>)"),
            std::string::npos);
  EXPECT_NE(PrintProgram(RestrictMeta(meta, {}).program).find("@T(<M0: a + 1>)"),
            std::string::npos);
  std::set<MutantId> all = {Mutant(1), Mutant(2), Mutant(3), Mutant(4)};
  EXPECT_EQ(PrintProgram(RestrictMeta(meta, all).program),
            PrintProgram(meta.program));
}

TEST(MutagenTest, ErasedMetaMatchesOriginal) {
  for (const std::string& name : testing::CorpusSubjects()) {
    Program original = ParseProgram(ReadCorpus(name));
    MetaProgram meta = BuildMetaMutant(original);
    EXPECT_EQ(PrintProgram(EraseMeta(meta.program)), PrintProgram(original))
        << name;
    std::size_t expected = 0;
    for (const MutationPoint& p : meta.points) {
      expected += p.replacements.size();
    }
    EXPECT_EQ(meta.mutants.size(), expected) << name;
  }
}

TEST(MutagenTest, MetaWithOnlyOriginalEvaluatesLikeOriginal) {
  for (const std::string& name : testing::CorpusSubjects()) {
    Program original = ParseProgram(ReadCorpus(name));
    MetaProgram meta = BuildMetaMutant(original);
    for (const std::string& test : original.TestNames()) {
      PlainResult a = EvalPlain(original, test, {});
      PlainResult b = EvalPlain(meta.program, test, {});
      EXPECT_EQ(a.outcome.kind, b.outcome.kind) << name << " " << test;
      EXPECT_EQ(a.statements, b.statements) << name << " " << test;
    }
  }
}

TEST(MutagenTest, MutantListFormat) {
  MetaProgram meta = testing::RunningExample();
  EXPECT_EQ(FormatMutantList(meta),
            "M1 21:9 + -> <<\n"
            "M2 24:11 / -> +\n"
            "M3 24:11 / -> *\n"
            "M4 35:8 < -> <=\n");
}

}  // namespace
}  // namespace mutlab
