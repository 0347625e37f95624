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

// Reference tree-walking evaluator over untainted values. It backs the
// Traditional strategy and serves as the oracle for the taint interpreter.

#ifndef MUTLAB_EVAL_H_
#define MUTLAB_EVAL_H_

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>

#include "mutlab/ast.h"

namespace mutlab {

// Statement cap used when no calibrated budget exists yet (original runs).
inline constexpr std::int64_t kDefaultStepCap = 50'000'000;

// Maximum number of simultaneously active user-function frames.
inline constexpr int kMaxCallDepth = 200;

enum class OutcomeKind { kPass, kAssertionFailure, kRuntimeException, kTimeout };

const char* OutcomeKindName(OutcomeKind kind);

struct TestOutcome {
  OutcomeKind kind = OutcomeKind::kPass;
  Location loc;
  ErrorKind error = ErrorKind::kType;  // meaningful for kRuntimeException
  std::string message;
  Value value;  // return value of the entry function on kPass

  bool passed() const { return kind == OutcomeKind::kPass; }
};

struct PlainOptions {
  // Which variant of each TaintChoice node runs. M0 runs the original.
  MutantId selected = MutantId::kOriginal;
  // A run that starts statement number budget + 1 times out.
  std::int64_t step_budget = kDefaultStepCap;
  bool track_coverage = false;
};

struct PlainResult {
  TestOutcome outcome;
  std::int64_t statements = 0;
  std::set<int> covered_points;  // when track_coverage
};

// Runs `entry` with its parameters bound from `env`. Counts one statement
// per executed statement node; a `while` counts once per condition check.
PlainResult EvalPlain(const Program& program, std::string_view entry,
                      const std::map<std::string, Value>& env,
                      const PlainOptions& options = {});

// Positional-argument form, used to recompute memoized calls.
PlainResult EvalPlainCall(const Program& program, std::string_view fn,
                          std::span<const Value> args,
                          const PlainOptions& options = {});

}  // namespace mutlab

#endif  // MUTLAB_EVAL_H_
