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

// The seven mutation-analysis strategies and kill-matrix assembly.

#ifndef MUTLAB_STRATEGIES_H_
#define MUTLAB_STRATEGIES_H_

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mutlab/bytecode.h"
#include "mutlab/engine.h"
#include "mutlab/mutagen.h"

namespace mutlab {

enum class Strategy {
  kTraditional,
  kSplitStream,
  kModuloState,
  kExecTaintsNfNm,
  kExecTaintsNf,
  kExecTaintsNm,
  kExecTaints,
};

inline constexpr Strategy kAllStrategies[] = {
    Strategy::kTraditional,    Strategy::kSplitStream,
    Strategy::kModuloState,    Strategy::kExecTaintsNfNm,
    Strategy::kExecTaintsNf,   Strategy::kExecTaintsNm,
    Strategy::kExecTaints,
};

enum class StrategyKind { kTraditional, kSplitStream, kModuloState, kExecTaints };

struct StrategyConfig {
  StrategyKind kind = StrategyKind::kExecTaints;
  bool fork = true;
  bool memo = true;
};

const char* StrategyName(Strategy s);
std::optional<Strategy> ParseStrategy(std::string_view name);
StrategyConfig ConfigFor(Strategy s);
// The exec-taints variant with the given switches; other kinds map to
// themselves.
Strategy WithSwitches(Strategy s, bool fork, bool memo);

// Per (test, mutant) verdicts.
class KillMatrix {
 public:
  KillMatrix() = default;
  KillMatrix(std::vector<std::string> tests, int mutant_count);

  const std::vector<std::string>& tests() const { return tests_; }
  int mutant_count() const { return mutant_count_; }

  Verdict at(int test, MutantId m) const;
  void set(int test, MutantId m, Verdict v);

  // Killed by the first killing test, else survived if any test covers
  // it, else not covered.
  Verdict Overall(MutantId m) const;

  int killed() const;
  int survived() const;
  int not_covered() const;
  // Killed over all mutants; not-covered mutants count as surviving.
  double score() const;

  friend bool operator==(const KillMatrix&, const KillMatrix&) = default;

 private:
  std::vector<std::string> tests_;
  int mutant_count_ = 0;
  std::vector<Verdict> cells_;  // test-major
};

// Calibration of one test: the original's statement count and the points
// it reaches. Not charged to any strategy.
struct Calibration {
  std::string test;
  TestOutcome outcome;
  std::int64_t statements = 0;
  std::set<int> covered;
};

// A parsed program ready for analysis.
struct Subject {
  std::string name;
  Program program;
  MetaProgram meta;
  CompiledProgram code;
  std::vector<Calibration> tests;
};

Subject PrepareSubject(std::string name, std::string_view source);

struct AnalysisOptions {
  std::int64_t budget_mult = 10;
  std::uint64_t seed = 42;
  MemoAuditor auditor;
};

struct RunReport {
  std::string program;
  Strategy strategy = Strategy::kTraditional;
  bool valid = true;
  std::string invalid_test;
  TestOutcome invalid_outcome;
  KillMatrix matrix;
  std::int64_t program_stmts = 0;
  std::int64_t infra_ops = 0;
  std::int64_t executions = 0;
  MemoStats memo;
  std::int64_t merge_violations = 0;
  std::uint64_t seed = 42;
  std::int64_t budget_mult = 10;
};

RunReport RunStrategy(const Subject& subject, Strategy strategy,
                      const AnalysisOptions& options = {});

class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The common kill matrix of `reports`. Throws InconsistencyError when two
// valid reports disagree on any verdict.
KillMatrix BuildKillMatrix(std::span<const RunReport> reports);

}  // namespace mutlab

#endif  // MUTLAB_STRATEGIES_H_
