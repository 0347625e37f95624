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

// Runs one test of a meta program against all its mutants at once.
//
// Execution-taint mode runs the original in a root context that carries
// every mutant as a taint. A mutant that takes another branch leaves the
// root and is finished separately, either from a snapshot taken at the
// branch (fork) or by re-running the enclosing call (no fork), and then
// rejoins the root through the call's return value. Split-stream and
// modulo-state modes run the same machine without taints.

#ifndef MUTLAB_ENGINE_H_
#define MUTLAB_ENGINE_H_

#include <cstdint>
#include <functional>
#include <set>
#include <span>
#include <string_view>
#include <vector>

#include "mutlab/bytecode.h"
#include "mutlab/eval.h"
#include "mutlab/memo.h"
#include "mutlab/mutagen.h"

namespace mutlab {

enum class EngineMode { kExecTaints, kSplitStream, kModuloState };

enum class Verdict {
  kKilledAssertion,
  kKilledException,
  kKilledTimeout,
  kSurvived,
  kNotCovered,
};

// "killed", "survived" or "not_covered".
const char* VerdictName(Verdict v);
// "assertion", "exception", "timeout"; empty for other verdicts.
const char* KillCause(Verdict v);
bool IsKilled(Verdict v);

// Called on every memo hit with the callee, its arguments and the reused
// return value.
using MemoAuditor = std::function<void(
    std::string_view fn, std::span<const Value> args, const Value& value)>;

struct EngineOptions {
  EngineMode mode = EngineMode::kExecTaints;
  bool fork = true;  // exec-taints only
  bool memo = true;  // exec-taints only
  // A context times out when its mutant starts statement budget + 1.
  std::int64_t budget = kDefaultStepCap;
  // Points the original reaches; mutants elsewhere are not covered. Null
  // treats every point as covered.
  const std::set<int>* covered = nullptr;
  MemoAuditor auditor;
};

struct TestRun {
  bool valid = true;      // the original passed
  TestOutcome original;   // the original's outcome when invalid
  std::vector<Verdict> verdicts;  // verdicts[i - 1] is Mi's
  std::int64_t program_stmts = 0;
  std::int64_t infra_ops = 0;
  std::int64_t executions = 0;  // contexts run, the root included
  MemoStats memo;
  // Calls that returned with a diverged mutant still pending. Always 0.
  std::int64_t merge_violations = 0;

  Verdict verdict(MutantId m) const { return verdicts[Index(m) - 1]; }
};

// `code` must be Compile(meta.program).
TestRun RunTest(const MetaProgram& meta, const CompiledProgram& code,
                std::string_view test, const EngineOptions& options);

}  // namespace mutlab

#endif  // MUTLAB_ENGINE_H_
