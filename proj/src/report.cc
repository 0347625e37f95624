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

#include <map>
#include <sstream>

#include "json.hpp"

namespace mutlab {
namespace {

using Json = nlohmann::ordered_json;

constexpr Verdict kVerdicts[] = {
    Verdict::kKilledAssertion, Verdict::kKilledException,
    Verdict::kKilledTimeout,   Verdict::kSurvived,
    Verdict::kNotCovered,
};
// One letter per verdict in the matrix rows, same order as kVerdicts.
constexpr char kVerdictCodes[] = "AETSN";

char CodeOf(Verdict v) { return kVerdictCodes[static_cast<int>(v)]; }

Verdict VerdictOfCode(char c) {
  for (Verdict v : kVerdicts) {
    if (CodeOf(v) == c) return v;
  }
  throw ReportFormatError(std::string("bad verdict code '") + c + "'");
}

OutcomeKind ParseOutcomeKind(const std::string& name) {
  for (OutcomeKind k :
       {OutcomeKind::kPass, OutcomeKind::kAssertionFailure,
        OutcomeKind::kRuntimeException, OutcomeKind::kTimeout}) {
    if (name == OutcomeKindName(k)) return k;
  }
  throw ReportFormatError("bad outcome kind " + name);
}

ErrorKind ParseErrorKind(const std::string& name) {
  for (int i = 0; i <= static_cast<int>(ErrorKind::kRecursion); ++i) {
    auto k = static_cast<ErrorKind>(i);
    if (name == ErrorKindName(k)) return k;
  }
  throw ReportFormatError("bad error kind " + name);
}

int CountVerdict(const KillMatrix& matrix, Verdict v) {
  int n = 0;
  for (int i = 1; i <= matrix.mutant_count(); ++i) {
    n += matrix.Overall(Mutant(i)) == v;
  }
  return n;
}

Json KilledObject(const KillMatrix& matrix) {
  Json killed;
  killed["total"] = matrix.killed();
  killed["assertion"] = CountVerdict(matrix, Verdict::kKilledAssertion);
  killed["exception"] = CountVerdict(matrix, Verdict::kKilledException);
  killed["timeout"] = CountVerdict(matrix, Verdict::kKilledTimeout);
  return killed;
}

Json ReportObject(const RunReport& r) {
  Json j;
  j["schema"] = kReportSchema;
  j["program"] = r.program;
  j["strategy"] = StrategyName(r.strategy);
  j["valid"] = r.valid;
  if (!r.valid) {
    Json outcome;
    outcome["kind"] = OutcomeKindName(r.invalid_outcome.kind);
    outcome["error"] = ErrorKindName(r.invalid_outcome.error);
    outcome["message"] = r.invalid_outcome.message;
    outcome["line"] = r.invalid_outcome.loc.line;
    outcome["column"] = r.invalid_outcome.loc.column;
    j["invalid_test"] = r.invalid_test;
    j["invalid_outcome"] = outcome;
  }
  j["seed"] = r.seed;
  j["budget_mult"] = r.budget_mult;
  j["mutants"] = r.matrix.mutant_count();
  j["killed"] = KilledObject(r.matrix);
  j["survived"] = r.matrix.survived();
  j["not_covered"] = r.matrix.not_covered();
  j["program_stmts"] = r.program_stmts;
  j["infra_ops"] = r.infra_ops;
  j["executions"] = r.executions;
  j["merge_violations"] = r.merge_violations;
  Json memo;
  memo["hits"] = r.memo.hits;
  memo["misses"] = r.memo.misses;
  memo["stores"] = r.memo.stores;
  memo["clears"] = r.memo.clears;
  j["memo"] = memo;
  j["tests"] = r.matrix.tests();
  Json rows = Json::array();
  for (std::size_t t = 0; t < r.matrix.tests().size(); ++t) {
    std::string row;
    for (int i = 1; i <= r.matrix.mutant_count(); ++i) {
      row += CodeOf(r.matrix.at(static_cast<int>(t), Mutant(i)));
    }
    rows.push_back(row);
  }
  j["matrix"] = rows;
  Json verdicts = Json::array();
  for (int i = 1; i <= r.matrix.mutant_count(); ++i) {
    Verdict v = r.matrix.Overall(Mutant(i));
    Json entry;
    entry["mutant"] = i;
    entry["verdict"] = VerdictName(v);
    entry["cause"] = KillCause(v);
    verdicts.push_back(entry);
  }
  j["verdicts"] = verdicts;
  return j;
}

std::string Dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string ReportToJson(const RunReport& report) {
  return Dump(ReportObject(report));
}

RunReport ReportFromJson(std::string_view text) {
  try {
    Json j = Json::parse(text);
    if (j.at("schema").get<std::string>() != kReportSchema) {
      throw ReportFormatError("unknown schema " + j.at("schema").dump());
    }
    RunReport r;
    r.program = j.at("program").get<std::string>();
    std::optional<Strategy> strategy =
        ParseStrategy(j.at("strategy").get<std::string>());
    if (!strategy) throw ReportFormatError("unknown strategy");
    r.strategy = *strategy;
    r.valid = j.at("valid").get<bool>();
    if (!r.valid) {
      const Json& outcome = j.at("invalid_outcome");
      r.invalid_test = j.at("invalid_test").get<std::string>();
      r.invalid_outcome.kind =
          ParseOutcomeKind(outcome.at("kind").get<std::string>());
      r.invalid_outcome.error =
          ParseErrorKind(outcome.at("error").get<std::string>());
      r.invalid_outcome.message = outcome.at("message").get<std::string>();
      r.invalid_outcome.loc.line = outcome.at("line").get<int>();
      r.invalid_outcome.loc.column = outcome.at("column").get<int>();
    }
    r.seed = j.at("seed").get<std::uint64_t>();
    r.budget_mult = j.at("budget_mult").get<std::int64_t>();
    r.program_stmts = j.at("program_stmts").get<std::int64_t>();
    r.infra_ops = j.at("infra_ops").get<std::int64_t>();
    r.executions = j.at("executions").get<std::int64_t>();
    r.merge_violations = j.at("merge_violations").get<std::int64_t>();
    const Json& memo = j.at("memo");
    r.memo.hits = memo.at("hits").get<std::int64_t>();
    r.memo.misses = memo.at("misses").get<std::int64_t>();
    r.memo.stores = memo.at("stores").get<std::int64_t>();
    r.memo.clears = memo.at("clears").get<std::int64_t>();
    int mutants = j.at("mutants").get<int>();
    auto tests = j.at("tests").get<std::vector<std::string>>();
    auto rows = j.at("matrix").get<std::vector<std::string>>();
    if (rows.size() != tests.size()) {
      throw ReportFormatError("matrix and tests differ in length");
    }
    r.matrix = KillMatrix(tests, mutants);
    for (std::size_t t = 0; t < rows.size(); ++t) {
      if (static_cast<int>(rows[t].size()) != mutants) {
        throw ReportFormatError("matrix row of wrong width");
      }
      for (int i = 1; i <= mutants; ++i) {
        r.matrix.set(static_cast<int>(t), Mutant(i),
                     VerdictOfCode(rows[t][i - 1]));
      }
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ReportFormatError(e.what());
  }
}

bool SameReport(const RunReport& a, const RunReport& b) {
  return a.program == b.program && a.strategy == b.strategy &&
         a.valid == b.valid && a.invalid_test == b.invalid_test &&
         a.invalid_outcome.kind == b.invalid_outcome.kind &&
         a.invalid_outcome.error == b.invalid_outcome.error &&
         a.invalid_outcome.message == b.invalid_outcome.message &&
         a.invalid_outcome.loc == b.invalid_outcome.loc &&
         a.matrix == b.matrix && a.program_stmts == b.program_stmts &&
         a.infra_ops == b.infra_ops && a.executions == b.executions &&
         a.memo == b.memo && a.merge_violations == b.merge_violations &&
         a.seed == b.seed && a.budget_mult == b.budget_mult;
}

std::string CsvRow(const RunReport& r) {
  std::ostringstream out;
  out << r.program << ',' << StrategyName(r.strategy) << ','
      << r.matrix.mutant_count() << ',' << r.matrix.killed() << ','
      << r.matrix.survived() << ',' << r.matrix.not_covered() << ','
      << r.program_stmts << ',' << r.infra_ops;
  return out.str();
}

std::string ReportsToCsv(std::span<const RunReport> reports) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const RunReport& r : reports) out += CsvRow(r) + "\n";
  return out;
}

std::string CompareToJson(std::span<const RunReport> reports) {
  KillMatrix agreed = BuildKillMatrix(reports);
  Json j;
  j["schema"] = kReportSchema;
  j["program"] = reports.empty() ? "" : reports.front().program;
  j["mutants"] = agreed.mutant_count();
  j["killed"] = KilledObject(agreed);
  j["survived"] = agreed.survived();
  j["not_covered"] = agreed.not_covered();
  Json list = Json::array();
  for (const RunReport& r : reports) list.push_back(ReportObject(r));
  j["reports"] = list;
  return Dump(j);
}

double MeanReduction(std::span<const RunReport> reports) {
  std::map<std::string, std::pair<const RunReport*, const RunReport*>> pairs;
  for (const RunReport& r : reports) {
    if (!r.valid) continue;
    if (r.strategy == Strategy::kTraditional) pairs[r.program].first = &r;
    if (r.strategy == Strategy::kExecTaints) pairs[r.program].second = &r;
  }
  double sum = 0;
  int n = 0;
  for (const auto& [program, pair] : pairs) {
    if (pair.first == nullptr || pair.second == nullptr ||
        pair.first->program_stmts == 0) {
      continue;
    }
    sum += static_cast<double>(pair.second->program_stmts) /
           static_cast<double>(pair.first->program_stmts);
    ++n;
  }
  return n == 0 ? 0.0 : sum / n;
}

std::string CorpusToJson(std::span<const RunReport> reports) {
  Json j;
  j["schema"] = kReportSchema;
  j["mean_reduction"] = MeanReduction(reports);
  Json list = Json::array();
  for (const RunReport& r : reports) list.push_back(ReportObject(r));
  j["reports"] = list;
  return Dump(j);
}

}  // namespace mutlab
