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

#include <algorithm>

#include "mutlab/eval.h"
#include "mutlab/parser.h"

namespace mutlab {

namespace {

struct StrategyRow {
  Strategy strategy;
  const char* name;
  StrategyConfig config;
};

constexpr StrategyRow kRows[] = {
    {Strategy::kTraditional, "traditional",
     {StrategyKind::kTraditional, false, false}},
    {Strategy::kSplitStream, "split-stream",
     {StrategyKind::kSplitStream, false, false}},
    {Strategy::kModuloState, "modulo-state",
     {StrategyKind::kModuloState, false, false}},
    {Strategy::kExecTaintsNfNm, "exec-taints-nf-nm",
     {StrategyKind::kExecTaints, false, false}},
    {Strategy::kExecTaintsNf, "exec-taints-nf",
     {StrategyKind::kExecTaints, false, true}},
    {Strategy::kExecTaintsNm, "exec-taints-nm",
     {StrategyKind::kExecTaints, true, false}},
    {Strategy::kExecTaints, "exec-taints",
     {StrategyKind::kExecTaints, true, true}},
};

const StrategyRow& RowFor(Strategy s) {
  for (const StrategyRow& row : kRows) {
    if (row.strategy == s) return row;
  }
  return kRows[0];
}

Verdict VerdictOf(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::kPass:
      return Verdict::kSurvived;
    case OutcomeKind::kAssertionFailure:
      return Verdict::kKilledAssertion;
    case OutcomeKind::kRuntimeException:
      return Verdict::kKilledException;
    case OutcomeKind::kTimeout:
      return Verdict::kKilledTimeout;
  }
  return Verdict::kSurvived;
}

}  // namespace

const char* StrategyName(Strategy s) { return RowFor(s).name; }

std::optional<Strategy> ParseStrategy(std::string_view name) {
  for (const StrategyRow& row : kRows) {
    if (row.name == name) return row.strategy;
  }
  return std::nullopt;
}

StrategyConfig ConfigFor(Strategy s) { return RowFor(s).config; }

Strategy WithSwitches(Strategy s, bool fork, bool memo) {
  if (ConfigFor(s).kind != StrategyKind::kExecTaints) return s;
  for (const StrategyRow& row : kRows) {
    if (row.config.kind == StrategyKind::kExecTaints &&
        row.config.fork == fork && row.config.memo == memo) {
      return row.strategy;
    }
  }
  return s;
}

KillMatrix::KillMatrix(std::vector<std::string> tests, int mutant_count)
    : tests_(std::move(tests)),
      mutant_count_(mutant_count),
      cells_(tests_.size() * mutant_count, Verdict::kNotCovered) {}

Verdict KillMatrix::at(int test, MutantId m) const {
  return cells_[static_cast<std::size_t>(test) * mutant_count_ + Index(m) - 1];
}

void KillMatrix::set(int test, MutantId m, Verdict v) {
  cells_[static_cast<std::size_t>(test) * mutant_count_ + Index(m) - 1] = v;
}

Verdict KillMatrix::Overall(MutantId m) const {
  bool covered = false;
  for (std::size_t t = 0; t < tests_.size(); ++t) {
    Verdict v = at(static_cast<int>(t), m);
    if (IsKilled(v)) return v;
    if (v != Verdict::kNotCovered) covered = true;
  }
  return covered ? Verdict::kSurvived : Verdict::kNotCovered;
}

int KillMatrix::killed() const {
  int n = 0;
  for (int i = 1; i <= mutant_count_; ++i) n += IsKilled(Overall(Mutant(i)));
  return n;
}

int KillMatrix::survived() const {
  int n = 0;
  for (int i = 1; i <= mutant_count_; ++i) {
    n += Overall(Mutant(i)) == Verdict::kSurvived;
  }
  return n;
}

int KillMatrix::not_covered() const {
  return mutant_count_ - killed() - survived();
}

double KillMatrix::score() const {
  return mutant_count_ == 0 ? 0.0
                            : static_cast<double>(killed()) / mutant_count_;
}

Subject PrepareSubject(std::string name, std::string_view source) {
  Subject subject;
  subject.name = std::move(name);
  subject.program = ParseProgram(source);
  subject.meta = BuildMetaMutant(subject.program);
  subject.code = Compile(subject.meta.program);
  for (const std::string& test : subject.program.TestNames()) {
    PlainOptions options;
    options.track_coverage = true;
    PlainResult r = EvalPlain(subject.meta.program, test, {}, options);
    subject.tests.push_back(
        {test, r.outcome, r.statements, std::move(r.covered_points)});
  }
  return subject;
}

namespace {

void RunTraditional(const Subject& subject, const Calibration& cal,
                    std::int64_t budget, int test_index, RunReport& report) {
  report.program_stmts += cal.statements;
  ++report.executions;
  for (const MutantInfo& info : subject.meta.mutants) {
    if (!cal.covered.contains(info.point)) continue;
    PlainOptions options;
    options.selected = info.id;
    options.step_budget = budget;
    PlainResult r = EvalPlain(subject.meta.program, cal.test, {}, options);
    report.program_stmts += r.statements;
    ++report.executions;
    report.matrix.set(test_index, info.id, VerdictOf(r.outcome.kind));
  }
}

}  // namespace

RunReport RunStrategy(const Subject& subject, Strategy strategy,
                      const AnalysisOptions& options) {
  RunReport report;
  report.program = subject.name;
  report.strategy = strategy;
  report.seed = options.seed;
  report.budget_mult = options.budget_mult;
  std::vector<std::string> names;
  for (const Calibration& cal : subject.tests) names.push_back(cal.test);
  report.matrix = KillMatrix(names, subject.meta.mutant_count());

  StrategyConfig config = ConfigFor(strategy);
  for (std::size_t t = 0; t < subject.tests.size(); ++t) {
    const Calibration& cal = subject.tests[t];
    if (!cal.outcome.passed()) {
      report.valid = false;
      report.invalid_test = cal.test;
      report.invalid_outcome = cal.outcome;
      return report;
    }
    std::int64_t budget = options.budget_mult * cal.statements;
    int test_index = static_cast<int>(t);
    if (config.kind == StrategyKind::kTraditional) {
      RunTraditional(subject, cal, budget, test_index, report);
      continue;
    }
    EngineOptions engine;
    switch (config.kind) {
      case StrategyKind::kSplitStream:
        engine.mode = EngineMode::kSplitStream;
        break;
      case StrategyKind::kModuloState:
        engine.mode = EngineMode::kModuloState;
        break;
      default:
        engine.mode = EngineMode::kExecTaints;
        break;
    }
    engine.fork = config.fork;
    engine.memo = config.memo;
    engine.budget = budget;
    engine.covered = &cal.covered;
    engine.auditor = options.auditor;
    TestRun run = RunTest(subject.meta, subject.code, cal.test, engine);
    if (!run.valid) {
      report.valid = false;
      report.invalid_test = cal.test;
      report.invalid_outcome = run.original;
      return report;
    }
    for (const MutantInfo& info : subject.meta.mutants) {
      report.matrix.set(test_index, info.id, run.verdict(info.id));
    }
    report.program_stmts += run.program_stmts;
    report.infra_ops += run.infra_ops;
    report.executions += run.executions;
    report.memo.hits += run.memo.hits;
    report.memo.misses += run.memo.misses;
    report.memo.stores += run.memo.stores;
    report.memo.clears += run.memo.clears;
    report.merge_violations += run.merge_violations;
  }
  return report;
}

KillMatrix BuildKillMatrix(std::span<const RunReport> reports) {
  const RunReport* first = nullptr;
  for (const RunReport& report : reports) {
    if (!report.valid) continue;
    if (first == nullptr) {
      first = &report;
    } else if (!(report.matrix == first->matrix)) {
      throw InconsistencyError(std::string("kill matrix of ") +
                               StrategyName(report.strategy) +
                               " differs from " +
                               StrategyName(first->strategy) + " on " +
                               report.program);
    }
  }
  return first == nullptr ? KillMatrix() : first->matrix;
}

}  // namespace mutlab
