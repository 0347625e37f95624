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

// Acceptance suite: one PASS or FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <unistd.h>

#include "mutlab/eval.h"
#include "mutlab/fuzz.h"
#include "mutlab/mutagen.h"
#include "mutlab/report.h"
#include "mutlab/strategies.h"
#include "mutlab/taint.h"
#include "test_util.h"

namespace mutlab {
namespace {

namespace fs = std::filesystem;

constexpr int kFuzzSeeds = 200;
constexpr int kMemoSamples = 1000;

struct Result {
  bool pass = true;
  std::string detail;
};

void Fail(Result& r, const std::string& why) {
  if (r.pass) r.detail = why;
  r.pass = false;
}

// Corpus subjects and fuzz programs, prepared once.
struct Workload {
  std::vector<Subject> corpus;
  std::vector<Subject> fuzz;
  std::map<std::string, std::vector<RunReport>> reports;  // by subject name
  std::int64_t memo_checked = 0;
  std::int64_t memo_mismatches = 0;
};

// Every strategy on `subject`; memo hits are recomputed on the original.
std::vector<RunReport> RunAll(const Subject& subject, Workload& w) {
  Program original = EraseMeta(subject.meta.program);
  AnalysisOptions options;
  options.auditor = [&](std::string_view fn, std::span<const Value> args,
                        const Value& value) {
    ++w.memo_checked;
    PlainResult fresh = EvalPlainCall(original, fn, args);
    if (!fresh.outcome.passed() || !(fresh.outcome.value == value)) {
      ++w.memo_mismatches;
    }
  };
  std::vector<RunReport> reports;
  for (Strategy s : kAllStrategies) {
    reports.push_back(RunStrategy(subject, s, options));
  }
  return reports;
}

const RunReport& Find(const std::vector<RunReport>& reports, Strategy s) {
  return reports[static_cast<int>(s)];
}

Result TaintRules() {
  Result r;
  auto I = [](std::int64_t v) { return Value::Int(v); };
  TaintSink sink;
  std::vector<std::pair<MutantId, BinaryOp>> none;
  TaintedValue rule4 =
      ApplyBinary(TaintedValue{{Mutant(0), I(1)}, {Mutant(1), I(2)}},
                  BinaryOp::kAdd, none,
                  TaintedValue{{Mutant(0), I(3)}, {Mutant(1), I(4)}}, sink);
  if (!(rule4 == TaintedValue{{Mutant(0), I(4)}, {Mutant(1), I(6)}})) {
    Fail(r, "rule 4 gave " + rule4.ToString());
  }
  TaintedValue rule7 =
      ApplyBinary(TaintedValue{{Mutant(0), I(1)}, {Mutant(1), I(2)}},
                  BinaryOp::kAdd, none,
                  TaintedValue{{Mutant(0), I(3)}, {Mutant(2), I(5)}}, sink);
  if (!(rule7 == TaintedValue{{Mutant(0), I(4)}, {Mutant(1), I(5)},
                              {Mutant(2), I(6)}})) {
    Fail(r, "rule 7 gave " + rule7.ToString());
  }
  // `a = a + 1` then `a = a / 2` with INPUT=1, under the example's mutants.
  MetaProgram meta = ::mutlab::testing::RunningExample();
  std::map<int, std::vector<std::pair<MutantId, BinaryOp>>> by_line;
  for (const MutantInfo& info : meta.mutants) {
    for (const MutationPoint& point : meta.points) {
      if (point.id == info.point) {
        by_line[point.loc.line].push_back({info.id, info.replacement});
      }
    }
  }
  TaintedValue a(I(1));
  a = ApplyBinary(a, BinaryOp::kAdd, by_line[21], TaintedValue(I(1)), sink);
  a = ApplyBinary(a, BinaryOp::kDiv, by_line[24], TaintedValue(I(2)), sink);
  TaintedValue expected{
      {Mutant(0), Value::Float(1.0)}, {Mutant(2), I(4)}, {Mutant(3), I(4)}};
  if (!(a == expected)) Fail(r, "running example gave " + a.ToString());
  if (r.pass) r.detail = "rule 4, rule 7, running example a = " + a.ToString();
  return r;
}

Result OracleEquivalence(Workload& w) {
  Result r;
  int subjects = 0;
  auto check = [&](const Subject& subject) {
    const std::vector<RunReport>& reports = w.reports[subject.name];
    ++subjects;
    for (const RunReport& report : reports) {
      if (!report.valid) {
        Fail(r, subject.name + ": invalid test " + report.invalid_test);
        return;
      }
      if (!(report.matrix == reports[0].matrix)) {
        Fail(r, subject.name + ": " + StrategyName(report.strategy) +
                    " differs from traditional");
      }
    }
  };
  for (const Subject& s : w.corpus) check(s);
  for (const Subject& s : w.fuzz) check(s);
  if (r.pass) {
    r.detail = std::to_string(subjects) + " programs, 7 strategies agree";
  }
  return r;
}

Result CostMonotonicity(Workload& w) {
  Result r;
  const std::pair<Strategy, Strategy> kOrders[] = {
      {Strategy::kModuloState, Strategy::kSplitStream},
      {Strategy::kExecTaints, Strategy::kExecTaintsNm},
      {Strategy::kExecTaints, Strategy::kExecTaintsNf},
      {Strategy::kExecTaintsNf, Strategy::kExecTaintsNfNm},
      {Strategy::kExecTaintsNm, Strategy::kExecTaintsNfNm},
  };
  for (const Subject& subject : w.corpus) {
    const std::vector<RunReport>& reports = w.reports[subject.name];
    for (const auto& [low, high] : kOrders) {
      std::int64_t a = Find(reports, low).program_stmts;
      std::int64_t b = Find(reports, high).program_stmts;
      if (a > b) {
        Fail(r, subject.name + ": " + StrategyName(low) + " " +
                    std::to_string(a) + " > " + StrategyName(high) + " " +
                    std::to_string(b));
      }
    }
  }
  if (r.pass) r.detail = "5 orderings on each corpus subject";
  return r;
}

Result ReductionMagnitude(Workload& w) {
  Result r;
  std::vector<RunReport> all;
  std::ostringstream per;
  for (const Subject& subject : w.corpus) {
    const std::vector<RunReport>& reports = w.reports[subject.name];
    all.insert(all.end(), reports.begin(), reports.end());
    per << ' ' << subject.name << '='
        << static_cast<double>(
               Find(reports, Strategy::kExecTaints).program_stmts) /
               Find(reports, Strategy::kTraditional).program_stmts;
  }
  double mean = MeanReduction(all);
  std::ostringstream detail;
  detail << "mean " << mean << " (limit 0.30;" << per.str() << ")";
  r.detail = detail.str();
  if (mean > 0.30) r.pass = false;
  return r;
}

Result MergeTotality(Workload& w) {
  Result r;
  std::int64_t violations = 0;
  for (const Subject& subject : w.fuzz) {
    for (const RunReport& report : w.reports[subject.name]) {
      violations += report.merge_violations;
    }
  }
  r.pass = violations == 0;
  r.detail = std::to_string(violations) + " unmerged returns over " +
             std::to_string(w.fuzz.size()) + " fuzz programs";
  return r;
}

Result MemoTransparency(Workload& w) {
  Result r;
  auto compare = [&](const Subject& subject) {
    const std::vector<RunReport>& reports = w.reports[subject.name];
    if (!(Find(reports, Strategy::kExecTaints).matrix ==
          Find(reports, Strategy::kExecTaintsNm).matrix) ||
        !(Find(reports, Strategy::kExecTaintsNf).matrix ==
          Find(reports, Strategy::kExecTaintsNfNm).matrix)) {
      Fail(r, subject.name + ": memo changes the kill matrix");
    }
  };
  for (const Subject& s : w.corpus) compare(s);
  for (const Subject& s : w.fuzz) compare(s);
  if (w.memo_mismatches != 0) {
    Fail(r, std::to_string(w.memo_mismatches) + " memo hits differ");
  }
  if (w.memo_checked < kMemoSamples) {
    Fail(r, "only " + std::to_string(w.memo_checked) + " memo hits");
  }
  if (r.pass) {
    r.detail = "on/off matrices equal; " + std::to_string(w.memo_checked) +
               " memo hits match re-execution";
  }
  return r;
}

std::string ReadBytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Result Determinism() {
  Result r;
  fs::path dir = fs::temp_directory_path() /
                 ("mutlab_determinism_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  for (const std::string& name : ::mutlab::testing::CorpusSubjects()) {
    std::string outputs[2];
    for (int run = 0; run < 2; ++run) {
      fs::path out = dir / (name + "." + std::to_string(run) + ".json");
      std::string command = std::string(MUTLAB_CLI) + " compare --program " +
                            ::mutlab::testing::CorpusPath(name) +
                            " --all --out " + out.string();
      int status = std::system(command.c_str());
      if (status != 0) {
        Fail(r, "`" + command + "` failed");
        continue;
      }
      outputs[run] = ReadBytes(out);
    }
    if (outputs[0].empty() || outputs[0] != outputs[1]) {
      Fail(r, name + ": compare outputs differ");
    }
  }
  fs::remove_all(dir);
  if (r.pass) r.detail = "5 subjects, two compare --all runs byte-identical";
  return r;
}

int Main() {
  using Clock = std::chrono::steady_clock;
  int failures = 0;
  auto report = [&](int id, const char* name, double limit_s,
                    const std::function<Result()>& criterion) {
    Clock::time_point start = Clock::now();
    Result r = criterion();
    double seconds =
        std::chrono::duration<double>(Clock::now() - start).count();
    if (limit_s > 0 && seconds > limit_s) {
      Fail(r, "took " + std::to_string(seconds) + " s");
    }
    failures += !r.pass;
    std::printf("%s %d %s: %s [%.2f s]\n", r.pass ? "PASS" : "FAIL", id, name,
                r.detail.c_str(), seconds);
    std::fflush(stdout);
  };

  report(1, "taint-rule conformance", 1.0, TaintRules);

  Workload w;
  Clock::time_point start = Clock::now();
  for (const std::string& name : ::mutlab::testing::CorpusSubjects()) {
    w.corpus.push_back(
        PrepareSubject(fs::path(name).stem().string(),
                       ::mutlab::testing::ReadCorpus(name)));
  }
  for (int seed = 0; seed < kFuzzSeeds; ++seed) {
    w.fuzz.push_back(
        PrepareSubject("fuzz" + std::to_string(seed), FuzzProgram(seed)));
  }
  for (const Subject& s : w.corpus) w.reports[s.name] = RunAll(s, w);
  for (const Subject& s : w.fuzz) w.reports[s.name] = RunAll(s, w);
  double shared =
      std::chrono::duration<double>(Clock::now() - start).count();
  std::printf("ran 7 strategies on %zu programs in %.2f s\n",
              w.corpus.size() + w.fuzz.size(), shared);

  report(2, "oracle equivalence", 300.0 - shared,
         [&] { return OracleEquivalence(w); });
  report(3, "cost monotonicity", 0, [&] { return CostMonotonicity(w); });
  report(4, "reduction magnitude", 60.0, [&] { return ReductionMagnitude(w); });
  report(5, "merge-back totality", 0, [&] { return MergeTotality(w); });
  report(6, "memo transparency and soundness", 0,
         [&] { return MemoTransparency(w); });
  report(7, "determinism", 0, Determinism);
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace mutlab

int main() { return mutlab::Main(); }
