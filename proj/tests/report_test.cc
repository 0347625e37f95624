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

#include "mutlab/report.h"

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "json.hpp"
#include "test_util.h"

namespace mutlab {
namespace {

int CountLines(const std::string& text) {
  int n = 0;
  for (char c : text) n += c == '\n';
  return n;
}

std::vector<RunReport> AllStrategies(const Subject& subject) {
  std::vector<RunReport> reports;
  for (Strategy s : kAllStrategies) reports.push_back(RunStrategy(subject, s));
  return reports;
}

TEST(ReportTest, EmptyMatrixIsValidJsonWithZeroCounts) {
  RunReport report;
  report.program = "empty";
  auto j = nlohmann::json::parse(ReportToJson(report));
  EXPECT_EQ(j["schema"], "mutlab/1");
  EXPECT_EQ(j["mutants"], 0);
  EXPECT_EQ(j["killed"]["total"], 0);
  EXPECT_EQ(j["survived"], 0);
  EXPECT_EQ(j["not_covered"], 0);
  EXPECT_TRUE(j["verdicts"].empty());
}

TEST(ReportTest, KeyOrderIsStable) {
  std::string text = ReportToJson(RunReport());
  EXPECT_EQ(text.rfind("{\n  \"schema\": \"mutlab/1\",\n  \"program\"", 0), 0u);
  EXPECT_LT(text.find("\"killed\""), text.find("\"survived\""));
  EXPECT_LT(text.find("\"program_stmts\""), text.find("\"infra_ops\""));
}

TEST(ReportTest, CsvHasHeaderAndOneRowPerStrategy) {
  Subject subject =
      PrepareSubject("euler", ::mutlab::testing::ReadCorpus("euler.ml0"));
  std::vector<RunReport> reports = AllStrategies(subject);
  std::string csv = ReportsToCsv(reports);
  EXPECT_EQ(CountLines(csv), 8);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "program,strategy,mutants,killed,survived,not_covered,"
            "program_stmts,infra_ops");
  EXPECT_NE(csv.find("\neuler,exec-taints,"), std::string::npos);
}

TEST(ReportTest, RoundTrip) {
  Subject subject =
      PrepareSubject("newton", ::mutlab::testing::ReadCorpus("newton.ml0"));
  for (const RunReport& report : AllStrategies(subject)) {
    std::string text = ReportToJson(report);
    RunReport back = ReportFromJson(text);
    EXPECT_TRUE(SameReport(back, report)) << StrategyName(report.strategy);
    EXPECT_EQ(ReportToJson(back), text);
  }
}

TEST(ReportTest, RoundTripInvalid) {
  Subject subject = PrepareSubject("bad", R"(
def test_bad():
  assert 1 // 0 == 3
)");
  RunReport report = RunStrategy(subject, Strategy::kExecTaints);
  ASSERT_FALSE(report.valid);
  RunReport back = ReportFromJson(ReportToJson(report));
  EXPECT_TRUE(SameReport(back, report));
  EXPECT_EQ(back.invalid_outcome.kind, OutcomeKind::kRuntimeException);
}

TEST(ReportTest, RejectsForeignSchema) {
  EXPECT_THROW(ReportFromJson(R"({"schema":"other/2"})"), ReportFormatError);
  EXPECT_THROW(ReportFromJson("not json"), ReportFormatError);
}

TEST(ReportTest, CompareListsAllStrategies) {
  Subject subject =
      PrepareSubject("euler", ::mutlab::testing::ReadCorpus("euler.ml0"));
  std::vector<RunReport> reports = AllStrategies(subject);
  auto j = nlohmann::json::parse(CompareToJson(reports));
  ASSERT_EQ(j["reports"].size(), 7u);
  for (const auto& r : j["reports"]) {
    EXPECT_EQ(r["killed"], j["killed"]);
    EXPECT_EQ(r["verdicts"], j["reports"][0]["verdicts"]);
  }
  EXPECT_EQ(CompareToJson(reports), CompareToJson(AllStrategies(subject)));
}

TEST(ReportTest, MeanReduction) {
  RunReport trad_a, full_a, trad_b, full_b, lone;
  trad_a.program = full_a.program = "a";
  trad_b.program = full_b.program = "b";
  lone.program = "c";
  full_a.strategy = full_b.strategy = Strategy::kExecTaints;
  trad_a.program_stmts = 100;
  full_a.program_stmts = 10;
  trad_b.program_stmts = 50;
  full_b.program_stmts = 25;
  lone.program_stmts = 7;
  std::vector<RunReport> reports = {trad_a, full_b, lone, full_a, trad_b};
  EXPECT_DOUBLE_EQ(MeanReduction(reports), (0.1 + 0.5) / 2);
  EXPECT_DOUBLE_EQ(MeanReduction({}), 0.0);
}

}  // namespace
}  // namespace mutlab
